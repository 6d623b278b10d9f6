#pragma once

#include "lensgrid/error.hpp"
#include "lensgrid/rational.hpp"
#include "lensgrid/s3_grid.hpp"

#include <numeric>

namespace lensgrid {

// d(p,q,i) = (pq - (2i+1-p-q)^2) / (4pq) - d(q, p mod q, i mod q),  d(1,0,0) = 0.
inline Rational d_invariant(int p, int q, int i) {
    if (p < 1) throw Error(ErrorCode::BadParams, "p must be positive");
    if (p == 1) {
        if (q != 0) throw Error(ErrorCode::BadParams, "p = 1 requires q = 0");
        return 0;
    }
    if (q <= 0 || q >= p) throw Error(ErrorCode::BadParams, "q must lie in (0, p)");
    if (std::gcd(p, q) != 1) throw Error(ErrorCode::BadParams, "gcd(p, q) must be 1");
    i = mod(i, p);
    long long s = 2LL * i + 1 - p - q;
    Rational head(BigInt(1LL * p * q - s * s), BigInt(4LL * p * q));
    return head - d_invariant(q, p % q, i % q);
}

}  // namespace lensgrid
