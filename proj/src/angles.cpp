#include "tileforge/angles.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>

namespace tf {

namespace detail {
double measure_atom(Atom a); // divide.cpp
}

double atom_degrees(Atom a)
{
    static std::once_flag once;
    static double g = 0, e = 0;
    std::call_once(once, [] {
        g = detail::measure_atom(Atom::GammaStarExcess);
        e = detail::measure_atom(Atom::EpsStarExcess);
    });
    return a == Atom::GammaStarExcess ? g : e;
}

ExactAngle ExactAngle::atom(Atom a, const Rational& coeff)
{
    ExactAngle r;
    (a == Atom::GammaStarExcess ? r.q1 : r.q2) = coeff;
    return r;
}

ExactAngle ExactAngle::parse(const std::string& text)
{
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
    if (s.empty())
        throw Error("PARSE", "empty angle");
    try {
        auto dot = s.find('.');
        if (dot == std::string::npos)
            return ExactAngle(Rational(s));
        std::string intPart = s.substr(0, dot), frac = s.substr(dot + 1);
        bool neg = !intPart.empty() && intPart[0] == '-';
        if (neg)
            intPart.erase(0, 1);
        if (intPart.empty())
            intPart = "0";
        mpz_class scale = 1;
        for (size_t i = 0; i < frac.size(); ++i)
            scale *= 10;
        Rational r(mpz_class(intPart + frac), scale);
        r.canonicalize();
        return ExactAngle(neg ? Rational(-r) : r);
    } catch (const std::invalid_argument&) {
        throw Error("PARSE", "bad angle '" + text + "'");
    }
}

double ExactAngle::numeric() const
{
    double v = q0.get_d();
    if (q1 != 0)
        v += q1.get_d() * atom_degrees(Atom::GammaStarExcess);
    if (q2 != 0)
        v += q2.get_d() * atom_degrees(Atom::EpsStarExcess);
    return v;
}

ExactAngle ExactAngle::mod360() const
{
    ExactAngle r = *this;
    double v = r.numeric();
    mpz_class turns(static_cast<long>(std::floor(v / 360.0)));
    r.q0 -= Rational(turns * 360);
    // numeric() can sit a hair below 0 or at 360 after the shift
    if (r.numeric() < 0)
        r.q0 += 360;
    else if (r.numeric() >= 360)
        r.q0 -= 360;
    return r;
}

std::string rational_str(const Rational& r)
{
    return r.get_str();
}

std::array<std::string, 3> ExactAngle::triple() const
{
    return {rational_str(q0), rational_str(q1), rational_str(q2)};
}

ExactAngle ExactAngle::from_triple(const std::array<std::string, 3>& t)
{
    try {
        Rational a(t[0]), g(t[1]), e(t[2]);
        a.canonicalize();
        g.canonicalize();
        e.canonicalize();
        return ExactAngle(a, g, e);
    } catch (const std::invalid_argument&) {
        throw Error("PARSE", "bad exact angle triple");
    }
}

std::string ExactAngle::str() const
{
    std::string s = rational_str(q0);
    auto term = [&](const Rational& c, const char* name) {
        if (c == 0)
            return;
        s += c > 0 ? "+" : "-";
        Rational a = abs(c);
        if (a != 1)
            s += rational_str(a) + "*";
        s += name;
    };
    term(q1, "g*");
    term(q2, "e*");
    return s;
}

ExactAngle& ExactAngle::operator+=(const ExactAngle& o)
{
    q0 += o.q0;
    q1 += o.q1;
    q2 += o.q2;
    return *this;
}

ExactAngle& ExactAngle::operator-=(const ExactAngle& o)
{
    q0 -= o.q0;
    q1 -= o.q1;
    q2 -= o.q2;
    return *this;
}

ExactAngle& ExactAngle::operator*=(const Rational& k)
{
    q0 *= k;
    q1 *= k;
    q2 *= k;
    return *this;
}

bool operator<(const ExactAngle& a, const ExactAngle& b)
{
    if (a == b)
        return false;
    if (!a.has_atoms() && !b.has_atoms())
        return a.q0 < b.q0;
    return a.numeric() < b.numeric();
}

ExactAngle angle_sum(const std::vector<ExactAngle>& angles)
{
    if (angles.empty())
        throw Error("EMPTY", "angle_sum of an empty list");
    ExactAngle s;
    for (const auto& a : angles)
        s += a;
    return s;
}

Roundness is_round(const ExactAngle& a)
{
    if (a.has_atoms())
        return Roundness::Neither;
    if (a.q0 == 180)
        return Roundness::Flat;
    if (a.q0 == 360)
        return Roundness::Full;
    return Roundness::Neither;
}

const char* to_string(Roundness r)
{
    switch (r) {
    case Roundness::Flat: return "FLAT";
    case Roundness::Full: return "FULL";
    default: return "NEITHER";
    }
}

bool mod_filter(const std::vector<ExactAngle>& angles)
{
    mpz_class den = 1;
    for (const auto& a : angles) {
        if (a.has_atoms())
            throw Error("ATOMS", "mod_filter needs rational angles");
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.q0.get_den_mpz_t());
    }
    mpz_class mod = den * 10;
    if (!mod.fits_slong_p())
        return true; // too fine to be useful as a filter
    long m = mod.get_si();
    std::vector<char> seen(m, 0);
    for (const auto& a : angles) {
        mpz_class scaled = a.q0.get_num() * (den / a.q0.get_den());
        mpz_class r = scaled % mod;
        if (r < 0)
            r += mod;
        long v = r.get_si();
        std::vector<char> next = seen;
        next[v] = 1;
        for (long k = 0; k < m; ++k)
            if (seen[k])
                next[(k + v) % m] = 1;
        seen.swap(next);
        if (seen[0])
            return true;
    }
    return false;
}

std::optional<ExactAngle> snap_angle(double deg, const std::vector<ExactAngle>& basis,
                                     int maxCoeff, double tol)
{
    const size_t n = basis.size();
    std::vector<double> vals(n);
    for (size_t i = 0; i < n; ++i)
        vals[i] = basis[i].numeric();

    // Enumerate coefficient vectors by increasing L1 norm so that the
    // sparsest combination wins.
    std::vector<int> c(n, 0);
    for (int norm = 0; norm <= maxCoeff * static_cast<int>(n); ++norm) {
        std::fill(c.begin(), c.end(), -maxCoeff);
        while (true) {
            int l1 = 0;
            for (int x : c)
                l1 += std::abs(x);
            if (l1 == norm) {
                double rest = deg;
                for (size_t i = 0; i < n; ++i)
                    rest -= c[i] * vals[i];
                double k = std::round(rest);
                if (std::fabs(rest - k) < tol) {
                    ExactAngle r(static_cast<long>(k));
                    for (size_t i = 0; i < n; ++i)
                        if (c[i] != 0)
                            r += basis[i] * Rational(c[i]);
                    return r;
                }
            }
            size_t i = 0;
            while (i < n && c[i] == maxCoeff) {
                c[i] = -maxCoeff;
                ++i;
            }
            if (i == n)
                break;
            ++c[i];
        }
        if (n == 0)
            break;
    }
    if (n == 0) {
        double k = std::round(deg);
        if (std::fabs(deg - k) < tol)
            return ExactAngle(static_cast<long>(k));
    }
    return std::nullopt;
}

} // namespace tf
