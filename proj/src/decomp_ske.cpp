#include "qact/actions.hpp"
#include "qact/decomp.hpp"
#include "qact/error.hpp"

namespace qact {

MultiplicitySolution multiplicities_from_quotient_genera(const QuaternionGroup& q, const Ske& s) {
    if (s.group.get() != q.group_ptr().get()) fail(ErrorKind::InvalidParameter, "ske does not act through this Q(2^n)");
    auto check = validate_ske(s);
    if (!check.valid) fail(ErrorKind::InvalidParameter, "invalid ske: " + check.diagnostic);
    std::map<std::string, long> dims;
    dims["1"] = quotient_data(s, q.subgroups().get("1")).genus;
    dims["G"] = quotient_data(s, q.subgroups().get("G")).genus;
    for (const auto& [label, k] : q.subgroups().canonical()) dims[label] = quotient_data(s, k).genus;
    auto sol = multiplicities_from_dimensions(q, dims);
    if (!sol.unique) fail(ErrorKind::Internal, "quotient genera do not determine the multiplicities");
    return sol;
}

}  // namespace qact
