#pragma once

#include <cstdint>

#include "matbreak/matrix.hpp"

namespace matbreak::worked {

// Key exchange over GL(2, F_569).
//
// The published run lists Alice = (449, 41), Bob = (509, 131), but its C1
// and K are M1^509 M2^131 and M1^449 M2^41 respectively, i.e. the roles are
// swapped. C2 does not depend on the assignment.
namespace kex {

inline constexpr std::uint64_t kModulus = 569;
inline ModMatrix m1() { return ModMatrix({{12, 34}, {11, 99}}, Modulus(kModulus)); }
inline ModMatrix m2() { return ModMatrix({{172, 94}, {91, 125}}, Modulus(kModulus)); }

inline constexpr std::int64_t kListedAlice[2] = {449, 41};
inline constexpr std::int64_t kListedBob[2] = {509, 131};

inline ModMatrix printed_c1() { return ModMatrix({{502, 108}, {3, 322}}, Modulus(kModulus)); }
inline ModMatrix printed_c2() { return ModMatrix({{501, 343}, {200, 170}}, Modulus(kModulus)); }
inline ModMatrix printed_key() { return ModMatrix({{273, 85}, {436, 278}}, Modulus(kModulus)); }

/// The factorization (x0, x1, y0, y1) shown for the eavesdropper.
inline constexpr std::uint64_t kPrintedSolution[4] = {1, 166, 244, 168};

}  // namespace kex

// Patent scheme with n = 541 * 113 = 61133 (printed as "6133"; every
// printed matrix reduces consistently only modulo 61133).
namespace pke {

inline constexpr std::uint64_t kP = 541;
inline constexpr std::uint64_t kQ = 113;
inline constexpr std::uint64_t kN = kP * kQ;

inline ModMatrix c() { return ModMatrix({{243, 112}, {234, 233}}, Modulus(kN)); }
inline ModMatrix a() { return ModMatrix({{121, 231}, {144, 242}}, Modulus(kN)); }

/// G = 14 + 3374 C, D = 34125 + 7123 G
inline constexpr std::uint64_t kGCoeffs[2] = {14, 3374};
inline constexpr std::uint64_t kDCoeffs[2] = {34125, 7123};

inline ModMatrix printed_b() { return ModMatrix({{36124, 40493}, {39554, 16490}}, Modulus(kN)); }
inline ModMatrix printed_g() { return ModMatrix({{25167, 11090}, {55920, 52560}}, Modulus(kN)); }
inline ModMatrix printed_d() { return ModMatrix({{56710, 10234}, {36665, 40513}}, Modulus(kN)); }
inline ModMatrix printed_e() { return ModMatrix({{57174, 14133}, {7237, 20711}}, Modulus(kN)); }
inline ModMatrix printed_key() { return ModMatrix({{20609, 51651}, {14785, 1448}}, Modulus(kN)); }

inline ModMatrix printed_e_541() { return ModMatrix({{369, 67}, {204, 153}}, Modulus(kP)); }
inline ModMatrix printed_key_541() { return ModMatrix({{51, 256}, {178, 366}}, Modulus(kP)); }
inline ModMatrix printed_key_113() { return ModMatrix({{43, 10}, {95, 92}}, Modulus(kQ)); }

/// The printed (x0, y0) per prime: D mod p = x0 + y0 C, coefficients in
/// the basis (1, C) rather than (1, G).
inline constexpr std::uint64_t kPrintedCoeffs541[2] = {220, 159};
inline constexpr std::uint64_t kPrintedCoeffs113[2] = {55, 49};

}  // namespace pke

}  // namespace matbreak::worked
