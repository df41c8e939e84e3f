#pragma once

#include <cstddef>
#include <vector>

#include "hm/mat.hpp"

namespace hm {

/// C^0 -> C^1 -> ... with diffs[n]: C^n -> C^{n+1}.
struct CochainComplex {
    FieldSpec field;
    std::vector<std::size_t> dims;
    std::vector<Mat> diffs;

    /// Cohomology dims in degrees 0..diffs.size()-1.
    std::vector<std::size_t> cohomology(Exec exec = Exec::Parallel) const;
    /// Index of the first degree where d∘d fails, or -1.
    long first_nonzero_square() const;
};

/// ... -> C_1 -> C_0 with diffs[n]: C_{n+1} -> C_n.
struct ChainComplex {
    FieldSpec field;
    std::vector<std::size_t> dims;
    std::vector<Mat> diffs;

    /// Homology dims in degrees 0..diffs.size()-1.
    std::vector<std::size_t> homology(Exec exec = Exec::Parallel) const;
};

}  // namespace hm
