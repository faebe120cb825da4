#pragma once

#include <gmpxx.h>

#include <string>

namespace schreier {

/// Exact rational used for every measure-valued quantity.
using MeasureValue = mpq_class;
using BigInt = mpz_class;

/// "p/q" with the denominator always present, e.g. "3/1".
std::string to_string(const MeasureValue& q);
std::string to_string(const BigInt& z);

/// num/den in canonical form (gmpxx does not reduce on construction).
MeasureValue ratio(const BigInt& num, const BigInt& den);

/// base^exp for a (possibly negative) integer exponent.
MeasureValue power(long base, long exp);
BigInt ipower(long base, unsigned long exp);

}  // namespace schreier
