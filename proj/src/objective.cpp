#include "sparks/objective.hpp"

#include "sparks/diagnostics.hpp"

namespace sparks {

lp_objective build_objective(const lp_build_info& info, const instance_assignment& inst,
                             const rat& d) {
    if (d < rat(0) || rat(2) * d > rat(1))
        fail(error_kind::bounds, "objective weight d must lie in [0, 1/2], got " + d.to_string());
    lp_objective obj;
    obj.d = d;
    obj.output = var_ref::mem(info.mem.scalar_cell("w"), info.p);
    auto cells = inst.input_cells(info.mem);
    auto bits = inst.input_bits(info.mem);
    for (size_t j = 0; j < cells.size(); ++j) {
        obj.input_terms.emplace_back(var_ref::mem(cells[j], 0), bits[j] ? 1 : -1);
        if (!bits[j])
            ++obj.constant;
    }
    return obj;
}

rat objective_value(const lp_objective& obj, const std::map<std::string, rat>& sol) {
    rat v(obj.constant);
    for (const auto& [ref, coef] : obj.input_terms) {
        auto it = sol.find(ref.name());
        if (it != sol.end())
            v = v + rat(coef) * it->second;
    }
    if (!(obj.d == rat(0))) {
        auto it = sol.find(obj.output.name());
        if (it != sol.end())
            v = v + obj.d * it->second;
    }
    return v;
}

} // namespace sparks
