#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "substfactor/core.hpp"

namespace substfactor {

struct CatalogParams {
    std::optional<int> k;
    std::optional<int> l;
    /// Symbol partition for `fmax_ident`, e.g. "e=f=g,a=b".
    std::optional<std::string> partition;
};

/// Every substitution of the workbench by name: fibonacci, universal, rs4, tm,
/// pd, gtm, gpd, toeplitzT, squiral, fmax, table, tablefac1, tablefac2,
/// fmax_ident.
Substitution catalog(std::string_view name, const CatalogParams& params = {});

const std::vector<std::string>& catalog_names();

/// Names that take no parameters.
const std::vector<std::string>& catalog_plain_names();

/// The squiral block substitution on {1, -1}, as selected by the constraint
/// search in squiral_search.hpp.
Substitution squiral();

}  // namespace substfactor
