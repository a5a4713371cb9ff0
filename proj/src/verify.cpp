#include "sparks/verify.hpp"

#include <unordered_map>

#include "sparks/util.hpp"

namespace sparks {

namespace {

struct exact_row_sink : row_sink {
    const std::unordered_map<std::string, rat>& vals;
    verify_report& rep;

    exact_row_sink(const std::unordered_map<std::string, rat>& v, verify_report& r)
        : vals(v), rep(r) {}

    void row(const lp_row& r) override {
        ++rep.rows;
        rat lhs(0);
        for (size_t i = 0; i < r.nterms; ++i) {
            auto it = vals.find(r.terms[i].first.name());
            if (it == vals.end())
                continue;
            lhs += rat(r.terms[i].second) * it->second;
        }
        rat rhs(r.rhs);
        bool ok = r.s == sense::eq ? lhs == rhs : lhs <= rhs;
        if (!ok) {
            ++rep.violations;
            if (rep.first_violation.empty())
                rep.first_violation = std::string(r.name) + ": lhs " +
                                      lhs.to_string() +
                                      (r.s == sense::eq ? " != " : " > ") +
                                      rhs.to_string();
        }
    }
};

} // namespace

verify_report verify_solution(const lp_build_info& info, const lp_options& opt,
                              const lp_objective& obj,
                              const std::map<std::string, rat>& sol) {
    const rat tol(1, 1000000);
    const rat one(1);
    verify_report rep;

    std::unordered_map<std::string, rat> snapped;
    std::map<std::string, rat> for_objective;
    for (const auto& v : enumerate_vars(info)) {
        std::string name = v.name();
        auto it = sol.find(name);
        if (it == sol.end()) {
            ++rep.missing;
            continue;
        }
        rat val = it->second;
        if (val < rat(0) - tol || val > one + tol)
            ++rep.bound_violations;
        if (val >= rat(0) - tol && val <= tol)
            val = rat(0);
        else if (val >= one - tol && val <= one + tol)
            val = one;
        else
            ++rep.nonintegral;
        snapped[name] = val;
        for_objective[name] = val;
    }

    exact_row_sink sink(snapped, rep);
    emit_lp_rows(info, opt, sink);
    rep.objective = objective_value(obj, for_objective);
    return rep;
}

} // namespace sparks
