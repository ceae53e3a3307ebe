// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include "bninfo/types.hpp"

namespace bninfo {

/// Checks every structural and distributional invariant of a network and
/// reports the violations; never throws for bad content. Column sums are
/// checked within 1e-9 and never silently renormalized.
ValidationReport validate_network(const Network& net);

/// Convenience: throw bninfo::error with the report text when not ok.
void require_valid(const Network& net);

}  // namespace bninfo
