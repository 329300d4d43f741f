#ifndef QMFMC_NUMERIC_HPP
#define QMFMC_NUMERIC_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace qmfmc {

// All arithmetic in this project is exact. Int is an arbitrary-precision
// integer, Rat an arbitrary-precision rational kept in canonical lowest
// terms. Floating point never appears in any computation.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline const Int num(const Rat& r) { return r.get_num(); }
inline const Int den(const Rat& r) { return r.get_den(); }

inline bool is_integral(const Rat& r) { return r.get_den() == 1; }

// Serialized as "p" when integral, "p/q" otherwise (canonical form).
inline std::string rat_str(const Rat& r) { return r.get_str(); }

Rat parse_rat(const std::string& text);

inline Int ipow(Int base, unsigned long exp) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

inline Int lcm(const Int& a, const Int& b) {
    Int out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

inline bool fits_i64(const Int& v) {
    return v.fits_slong_p() != 0;  // long is 64-bit on this platform
}

inline std::int64_t to_i64(const Int& v) {
    if (!fits_i64(v)) throw std::overflow_error("integer does not fit in 64 bits");
    return static_cast<std::int64_t>(v.get_si());
}

}  // namespace qmfmc

#endif
