#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sepsys {

// Outcome of a structural check: empty violation list means valid.
struct Report {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    explicit operator bool() const { return ok(); }
    void add(std::string v) { violations.push_back(std::move(v)); }
    void merge(const Report& o, const std::string& prefix = "") {
        for (const auto& v : o.violations) violations.push_back(prefix + v);
    }
    bool mentions(const std::string& needle) const {
        for (const auto& v : violations)
            if (v.find(needle) != std::string::npos) return true;
        return false;
    }
    std::string str() const {
        if (ok()) return "ok";
        std::string s;
        for (const auto& v : violations) s += v + "\n";
        return s;
    }
};

}  // namespace sepsys
