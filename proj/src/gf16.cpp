#include "daqlink/gf16.hpp"

#include <stdexcept>

namespace daqlink {

int gf_log(GfElem a)
{
    if (a.is_zero())
        throw std::domain_error("gf_log: zero has no discrete logarithm");
    return detail::kLog[a.value()];
}

GfElem gf_inv(GfElem a)
{
    if (a.is_zero())
        throw std::domain_error("gf_inv: no inverse of zero");
    int e = (kGfGroupOrder - detail::kLog[a.value()]) % kGfGroupOrder;
    return GfElem(detail::kAntilog[size_t(e)]);
}

GfElem gf_div(GfElem a, GfElem b)
{
    return gf_mul(a, gf_inv(b));
}

}  // namespace daqlink
