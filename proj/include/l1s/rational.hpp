/**
 * Exact rational scalar type and dense rational vectors/matrices.
 *
 * The scalar is a GMP-backed rational with expression templates disabled so
 * that it can serve directly as an Eigen scalar.  Values are kept in lowest
 * terms with a positive denominator at all times; every helper below
 * preserves that normal form.
 */

#ifndef L1S_RATIONAL_HPP
#define L1S_RATIONAL_HPP

#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include "exceptions.hpp"

namespace l1s {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

using MatrixXr = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXr = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/**
 * Parse a rational from a decimal string, either "p" or "p/q".
 *
 * A sign is accepted on either component; the result is normalized (lowest
 * terms, positive denominator) regardless of the input form, so e.g. "3/6"
 * parses to 1/2 and "1/-2" to -1/2.
 *
 * @throws ParseException if the string is not a rational or q = 0.
 */
inline Rational parseRational(const std::string& text)
{
    const auto slash = text.find('/');
    const std::string numPart = text.substr(0, slash);
    const std::string denPart = (slash == std::string::npos) ? "1" : text.substr(slash + 1);
    auto isInteger = [](const std::string& s) -> bool
    {
        std::size_t start = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
        if (start == s.size())
            return false;
        for (std::size_t k = start; k < s.size(); ++k)
        {
            if (s[k] < '0' || s[k] > '9')
                return false;
        }
        return true;
    };
    if (!isInteger(numPart) || !isInteger(denPart))
        throw ParseException("not a rational: \"" + text + "\"");
    // The GMP string constructor rejects an explicit leading '+'.
    auto toInteger = [](const std::string& s) { return Integer(s[0] == '+' ? s.substr(1) : s); };
    const Integer num = toInteger(numPart);
    const Integer den = toInteger(denPart);
    if (den == 0)
        throw ParseException("zero denominator: \"" + text + "\"");

    // Dividing two canonical rationals re-canonicalizes, which the plain
    // string constructor of the GMP backend would not do.
    return Rational(num) / Rational(den);
}

/// Canonical decimal form, "p" or "p/q" with q > 1.
inline std::string toString(const Rational& value)
{
    return value.str();
}

inline double toDouble(const Rational& value)
{
    return value.template convert_to<double>();
}

/// Exact conversion; every finite double is a rational.
inline Rational rationalFromDouble(double value)
{
    return Rational(value);
}

/// Parse a separator-delimited list of rationals, e.g. "1,1/2,-3".
inline VectorXr parseRationalVector(const std::string& text, char sep = ',')
{
    std::vector<Rational> entries;
    std::size_t pos = 0;
    while (true)
    {
        const auto next = text.find(sep, pos);
        entries.push_back(parseRational(text.substr(pos, next - pos)));
        if (next == std::string::npos)
            break;
        pos = next + 1;
    }
    VectorXr v(static_cast<Eigen::Index>(entries.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = entries[static_cast<std::size_t>(i)];
    return v;
}

inline std::string toString(const VectorXr& v, const std::string& sep = ",")
{
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i)
    {
        if (i > 0)
            out += sep;
        out += toString(v(i));
    }
    return out;
}

/// Strict lexicographic order on rational vectors (for canonical sorting).
inline bool lexLess(const VectorXr& a, const VectorXr& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    for (Eigen::Index i = 0; i < a.size(); ++i)
    {
        if (a(i) != b(i))
            return a(i) < b(i);
    }
    return false;
}

}   // namespace l1s

#endif
