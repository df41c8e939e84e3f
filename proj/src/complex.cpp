#include "hm/complex.hpp"

#include "hm/linalg.hpp"

namespace hm {

std::vector<std::size_t> CochainComplex::cohomology(Exec exec) const
{
    std::vector<std::size_t> rk(diffs.size());
    for (std::size_t n = 0; n < diffs.size(); ++n) rk[n] = la::rank(diffs[n], exec);
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n < diffs.size(); ++n) out.push_back(dims[n] - rk[n] - (n > 0 ? rk[n - 1] : 0));
    return out;
}

long CochainComplex::first_nonzero_square() const
{
    for (std::size_t n = 0; n + 1 < diffs.size(); ++n)
        if (!(diffs[n + 1] * diffs[n]).is_zero()) return static_cast<long>(n);
    return -1;
}

std::vector<std::size_t> ChainComplex::homology(Exec exec) const
{
    std::vector<std::size_t> rk(diffs.size());
    for (std::size_t n = 0; n < diffs.size(); ++n) rk[n] = la::rank(diffs[n], exec);
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n < diffs.size(); ++n) out.push_back(dims[n] - rk[n] - (n > 0 ? rk[n - 1] : 0));
    return out;
}

}  // namespace hm
