#pragma once

#include <string>

namespace seqir {

/// Fixed 17-significant-digit formatting so artifacts are byte-stable and
/// round-trip exactly.
std::string fmt17(double v);

}  // namespace seqir
