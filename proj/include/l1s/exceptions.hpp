/**
 * Exception types shared across the library.
 */

#ifndef L1S_EXCEPTIONS_HPP
#define L1S_EXCEPTIONS_HPP

#include <stdexcept>
#include <string>

namespace l1s {

// The input matrix violates the standing full-row-rank assumption.
class RankDeficientException : public std::runtime_error
{
    public:
        explicit RankDeficientException(const std::string& what) : std::runtime_error(what) {}
};

// A query point claimed to lie in the dual polytope does not.
class PointOutsidePolytopeException : public std::runtime_error
{
    public:
        explicit PointOutsidePolytopeException(const std::string& what) : std::runtime_error(what) {}
};

// A parameter query was issued with lambda < 0.
class NegativeLambdaException : public std::runtime_error
{
    public:
        explicit NegativeLambdaException(const std::string& what) : std::runtime_error(what) {}
};

// A numerical solver that needs lambda > 0 was called with lambda <= 0.
class NonPositiveLambdaException : public std::runtime_error
{
    public:
        explicit NonPositiveLambdaException(const std::string& what) : std::runtime_error(what) {}
};

// A closed-form single-point evaluation was requested on a face whose active
// columns are linearly dependent.
class FaceNotInF0Exception : public std::runtime_error
{
    public:
        explicit FaceNotInF0Exception(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file or query string.
class ParseException : public std::runtime_error
{
    public:
        explicit ParseException(const std::string& what) : std::runtime_error(what) {}
};

}   // namespace l1s

#endif
