#pragma once

#include "redmach/bench.hpp"
#include "redmach/corpus.hpp"
#include "redmach/error.hpp"
#include "redmach/groebner.hpp"
#include "redmach/io.hpp"
#include "redmach/machine.hpp"
#include "redmach/ordering.hpp"
#include "redmach/poly.hpp"
#include "redmach/reduction.hpp"
#include "redmach/worker_pool.hpp"
