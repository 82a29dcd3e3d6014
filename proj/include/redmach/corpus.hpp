#pragma once

// Problem files and the built-in benchmark collection.
//
// A problem file starts with "vars: x,y,z" and lists one generator per
// non-empty line; '#' starts a comment. A collection is a sequence of such
// blocks, each introduced by "problem: <id>" and an optional
// "source: <tag>" line.

#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "redmach/corpus_data.hpp"
#include "redmach/error.hpp"
#include "redmach/io.hpp"
#include "redmach/poly.hpp"

namespace redmach {

struct ProblemSpec {
    int id = 0;
    std::string source;
    Ring ring;
    std::vector<std::string> generator_text;
    std::vector<Polynomial> generators;
};

namespace detail {

    inline std::string trim(std::string_view s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string_view::npos) return {};
        const auto e = s.find_last_not_of(" \t\r");
        return std::string(s.substr(b, e - b + 1));
    }

    inline bool take_key(const std::string& line, std::string_view key, std::string& value) {
        if (line.size() < key.size() + 1 || line.compare(0, key.size(), key) != 0 || line[key.size()] != ':')
            return false;
        value = trim(std::string_view(line).substr(key.size() + 1));
        return true;
    }

    inline std::vector<std::string> split_vars(const std::string& list, std::size_t line_no) {
        std::vector<std::string> vars;
        std::stringstream ss(list);
        for (std::string item; std::getline(ss, item, ',');) {
            item = trim(item);
            if (item.empty()) throw parse_error("empty variable name in vars list", 0, line_no);
            vars.push_back(item);
        }
        if (vars.empty()) throw parse_error("vars list is empty", 0, line_no);
        return vars;
    }

    class ProblemReader {
    public:
        explicit ProblemReader(std::string_view text) {
            std::stringstream ss{std::string(text)};
            std::size_t n = 0;
            for (std::string raw; std::getline(ss, raw);) {
                ++n;
                if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
                lines_.push_back({trim(raw), n});
            }
        }

        std::vector<ProblemSpec> collection() {
            std::vector<ProblemSpec> out;
            std::set<int> ids;
            skip_blank();
            while (pos_ < lines_.size()) {
                std::string value;
                if (!take_key(cur().text, "problem", value)) throw parse_error("expected 'problem: <id>'", 0, cur().no);
                int id = 0;
                try {
                    std::size_t used = 0;
                    id = std::stoi(value, &used);
                    if (used != value.size()) throw std::invalid_argument(value);
                } catch (const std::exception&) {
                    throw parse_error("malformed problem id '" + value + "'", 0, cur().no);
                }
                if (!ids.insert(id).second) throw parse_error("duplicate problem id " + value, 0, cur().no);
                ++pos_;
                ProblemSpec p;
                p.id = id;
                if (pos_ < lines_.size() && take_key(cur().text, "source", value)) {
                    p.source = value;
                    ++pos_;
                }
                body(p);
                out.push_back(std::move(p));
                skip_blank();
            }
            return out;
        }

        ProblemSpec single() {
            skip_blank();
            ProblemSpec p;
            body(p);
            skip_blank();
            if (pos_ < lines_.size()) throw parse_error("trailing content after generators", 0, cur().no);
            return p;
        }

    private:
        struct Line {
            std::string text;
            std::size_t no;
        };

        const Line& cur() const { return lines_[pos_]; }

        void skip_blank() {
            while (pos_ < lines_.size() && lines_[pos_].text.empty()) ++pos_;
        }

        // vars line followed by generators up to a blank line or the end
        void body(ProblemSpec& p) {
            std::string value;
            if (pos_ >= lines_.size() || !take_key(cur().text, "vars", value))
                throw parse_error("expected 'vars: <names>'", 0, pos_ < lines_.size() ? cur().no : lines_.size());
            try {
                p.ring = Ring(split_vars(value, cur().no));
            } catch (const parse_error&) {
                throw;
            } catch (const error& e) {
                throw parse_error(e.what(), 0, cur().no);
            }
            const std::size_t vars_line = cur().no;
            ++pos_;
            for (; pos_ < lines_.size() && !cur().text.empty(); ++pos_) {
                try {
                    p.generators.push_back(parse_polynomial(cur().text, p.ring));
                } catch (const parse_error& e) {
                    throw parse_error(e.message() + " in '" + cur().text + "'", e.column(), cur().no);
                }
                p.generator_text.push_back(cur().text);
            }
            if (p.generators.empty()) throw parse_error("problem has no generators", 0, vars_line);
        }

        std::vector<Line> lines_;
        std::size_t pos_ = 0;
    };

}  // namespace detail

/// Parses a single problem ("vars:" line plus generators).
inline ProblemSpec parse_problem(std::string_view text) { return detail::ProblemReader(text).single(); }

inline std::vector<ProblemSpec> parse_problem_collection(std::string_view text) {
    return detail::ProblemReader(text).collection();
}

/// The built-in 20-problem collection.
inline const std::vector<ProblemSpec>& corpus() {
    static const std::vector<ProblemSpec> problems = parse_problem_collection(detail::embedded_corpus);
    return problems;
}

}  // namespace redmach
