#pragma once

#include <gmpxx.h>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tf {

using Rational = mpq_class;

// Thrown for every domain error; `code` carries the stable identifier
// (ANGLE_MISMATCH, OUT_OF_DOMAIN, ...) that the CLI and tests check.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

enum class Atom { GammaStarExcess, EpsStarExcess };

// Degrees, measured from the tile geometry on first use.
double atom_degrees(Atom a);

// q0 + q1*G + q2*E degrees, G and E the two atoms.
class ExactAngle {
public:
    Rational q0, q1, q2;

    ExactAngle() = default;
    ExactAngle(long deg) : q0(deg) {}
    explicit ExactAngle(const Rational& deg) : q0(deg) {}
    ExactAngle(Rational a, Rational g, Rational e)
        : q0(std::move(a)), q1(std::move(g)), q2(std::move(e)) {}

    static ExactAngle atom(Atom a, const Rational& coeff = 1);
    // Accepts "98", "98.5", "197/2"; exact decimal conversion.
    static ExactAngle parse(const std::string& s);

    double numeric() const;
    bool has_atoms() const { return q1 != 0 || q2 != 0; }
    bool is_rational() const { return !has_atoms(); }

    // q0 reduced into [0, 360) ignoring atom parts.
    ExactAngle mod360() const;

    std::array<std::string, 3> triple() const;
    static ExactAngle from_triple(const std::array<std::string, 3>& t);
    std::string str() const;

    ExactAngle& operator+=(const ExactAngle& o);
    ExactAngle& operator-=(const ExactAngle& o);
    ExactAngle& operator*=(const Rational& k);
    friend ExactAngle operator+(ExactAngle a, const ExactAngle& b) { return a += b; }
    friend ExactAngle operator-(ExactAngle a, const ExactAngle& b) { return a -= b; }
    friend ExactAngle operator*(ExactAngle a, const Rational& k) { return a *= k; }
    friend ExactAngle operator*(const Rational& k, ExactAngle a) { return a *= k; }
    ExactAngle operator-() const { return ExactAngle(-q0, -q1, -q2); }

    friend bool operator==(const ExactAngle& a, const ExactAngle& b) {
        return a.q0 == b.q0 && a.q1 == b.q1 && a.q2 == b.q2;
    }
    friend bool operator!=(const ExactAngle& a, const ExactAngle& b) { return !(a == b); }
};

// Numeric order with exact tie detection; intended for interior angles.
bool operator<(const ExactAngle& a, const ExactAngle& b);
inline bool operator>(const ExactAngle& a, const ExactAngle& b) { return b < a; }
inline bool operator<=(const ExactAngle& a, const ExactAngle& b) { return !(b < a); }
inline bool operator>=(const ExactAngle& a, const ExactAngle& b) { return !(a < b); }

enum class Roundness { Flat, Full, Neither };

ExactAngle angle_sum(const std::vector<ExactAngle>& angles);
Roundness is_round(const ExactAngle& a);
const char* to_string(Roundness r);

// Units-digit test: does some non-empty sub-multiset sum to 0 mod 10?
bool mod_filter(const std::vector<ExactAngle>& angles);

// Finds k + sum c_i * basis_i (k integer, |c_i| <= maxCoeff) within tol
// of deg. Returns the combination with the fewest nonzero coefficients.
std::optional<ExactAngle> snap_angle(double deg, const std::vector<ExactAngle>& basis,
                                     int maxCoeff = 3, double tol = 1e-7);

std::string rational_str(const Rational& r);

} // namespace tf
