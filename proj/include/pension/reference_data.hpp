#ifndef PENSION_REFERENCE_DATA_HPP
#define PENSION_REFERENCE_DATA_HPP

#include <optional>
#include <vector>

#include "pension/core_types.hpp"

namespace pension {

struct ReferenceTables {
    UfLifeTable life_table;
    std::vector<UfCode> uf_codes;
};

// Bundled per-UF life expectancies (at birth / after 60 / after 65, by sex
// and total) from the official Brazilian mortality tables, plus the UF code
// register. Verifies the bundle's internal invariants on every call and
// throws IntegrityError if they fail.
ReferenceTables load_reference_tables();

// Code register lookups. uf_from_number throws ReferenceError outside 1..27.
const UfCode& uf_from_number(int number);
std::optional<int> uf_number_from_abbrev(std::string_view abbrev);

}  // namespace pension

#endif
