#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace redmach {

/// Fixed set of workers running index-parallel loops. The calling thread
/// takes part as worker 0, so a pool of size 1 spawns nothing.
class WorkerPool {
public:
    using task_type = std::function<void(std::size_t index, std::size_t worker)>;

    explicit WorkerPool(std::size_t workers) : size_(workers == 0 ? 1 : workers) {
        threads_.reserve(size_ - 1);
        for (std::size_t w = 1; w < size_; ++w) threads_.emplace_back([this, w](std::stop_token st) { loop(st, w); });
    }

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    ~WorkerPool() {
        {
            std::lock_guard lk(mutex_);
            for (auto& t : threads_) t.request_stop();
        }
        cv_.notify_all();
    }

    std::size_t size() const noexcept { return size_; }

    /// Runs fn(i, worker) for every i in [0, n) and returns once all calls
    /// finished. The first exception thrown by any call is rethrown here.
    void parallel_for(std::size_t n, const task_type& fn) {
        if (n == 0) return;
        if (size_ == 1 || n == 1) {
            for (std::size_t i = 0; i < n; ++i) fn(i, 0);
            return;
        }
        std::lock_guard serial(run_mutex_);
        {
            std::lock_guard lk(mutex_);
            task_ = &fn;
            count_ = n;
            next_.store(0);
            active_ = threads_.size();
            failure_ = nullptr;
            ++generation_;
        }
        cv_.notify_all();
        drain(0);
        std::unique_lock lk(mutex_);
        done_cv_.wait(lk, [&] { return active_ == 0; });
        task_ = nullptr;
        if (failure_) std::rethrow_exception(failure_);
    }

private:
    void drain(std::size_t worker) {
        for (std::size_t i; (i = next_.fetch_add(1)) < count_;) {
            try {
                (*task_)(i, worker);
            } catch (...) {
                std::lock_guard lk(mutex_);
                if (!failure_) failure_ = std::current_exception();
            }
        }
    }

    void loop(std::stop_token st, std::size_t worker) {
        std::size_t seen = 0;
        while (true) {
            {
                std::unique_lock lk(mutex_);
                cv_.wait(lk, [&] { return st.stop_requested() || generation_ != seen; });
                if (st.stop_requested()) return;
                seen = generation_;
            }
            drain(worker);
            {
                std::lock_guard lk(mutex_);
                if (--active_ == 0) done_cv_.notify_one();
            }
        }
    }

    std::size_t size_;
    std::vector<std::jthread> threads_;
    std::mutex run_mutex_;
    std::mutex mutex_;
    std::condition_variable cv_;
    std::condition_variable done_cv_;
    const task_type* task_ = nullptr;
    std::size_t count_ = 0;
    std::atomic<std::size_t> next_{0};
    std::size_t active_ = 0;
    std::size_t generation_ = 0;
    std::exception_ptr failure_;
};

}  // namespace redmach
