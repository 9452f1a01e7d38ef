#include "mhaar/rational.hpp"

#include "mhaar/errors.hpp"

#include <cctype>
#include <limits>

namespace mhaar {

namespace {

bool valid_integer(std::string_view s, bool allow_sign)
{
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        throw InvalidArgument("malformed rational '" + std::string(text) + "': expected a/b");
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!valid_integer(num, true) || !valid_integer(den, false))
        throw InvalidArgument("malformed rational '" + std::string(text) + "': expected a/b");
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    Integer nz(n), dz{std::string(den)};
    if (dz == 0) throw InvalidArgument("malformed rational '" + std::string(text) + "': zero denominator");
    Rational q(nz, dz);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer floor(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil(const Rational& q)
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

double to_double(const Rational& q) { return q.get_d(); }

Integer ipow(int base, unsigned long e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

Rational m_power(int m, long k)
{
    if (k >= 0) return Rational(ipow(m, static_cast<unsigned long>(k)));
    return Rational(Integer(1), ipow(m, static_cast<unsigned long>(-k)));
}

bool is_madic(const Rational& x, int m)
{
    Integer d = x.get_den();
    Integer g;
    Integer mm(m);
    while (d != 1) {
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), mm.get_mpz_t());
        if (g == 1) return false;
        d /= g;
    }
    return true;
}

long madic_depth(const Rational& x, int m)
{
    if (!is_madic(x, m))
        throw InvalidArgument("point " + to_string(x) + " is not " + std::to_string(m) + "-adic");
    long k = 0;
    Integer pk(1);
    while (true) {
        Integer prod = x.get_num() * pk;
        if (mpz_divisible_p(prod.get_mpz_t(), x.get_den_mpz_t())) return k;
        pk *= m;
        ++k;
    }
}

Rational rpow(const Rational& q, long e)
{
    if (e == 0) return Rational(1);
    if (e < 0) {
        if (q == 0) throw InvalidArgument("zero raised to a negative power");
        Rational inv = 1 / q;
        return rpow(inv, -e);
    }
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
}

bool exact_sqrt(const Rational& q, Rational& out)
{
    if (q < 0) return false;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    out = Rational(n, d);
    out.canonicalize();
    return true;
}

std::int64_t to_int64(const Integer& z)
{
    if (!z.fits_slong_p()) throw InvalidArgument("integer " + z.get_str() + " out of range");
    return z.get_si();
}

} // namespace mhaar
