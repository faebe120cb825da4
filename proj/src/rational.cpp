#include "schreier/rational.hpp"

namespace schreier {

std::string to_string(const MeasureValue& q) {
    MeasureValue c = q;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

BigInt ipower(long base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), BigInt(base).get_mpz_t(), exp);
    return r;
}

MeasureValue ratio(const BigInt& num, const BigInt& den) {
    MeasureValue r(num, den);
    r.canonicalize();
    return r;
}

MeasureValue power(long base, long exp) {
    if (exp >= 0) return MeasureValue(ipower(base, static_cast<unsigned long>(exp)));
    MeasureValue r(BigInt(1), ipower(base, static_cast<unsigned long>(-exp)));
    r.canonicalize();
    return r;
}

}  // namespace schreier
