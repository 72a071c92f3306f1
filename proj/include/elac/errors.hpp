#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace elac {

enum class ErrorKind {
    domain,
    quadrature,
    singular_curvature,
    parallel_tangents,
    degenerate_triangle,
    not_similar,
    not_found,
    unreachable,
    no_positive_root,
    tangent_sense_mismatch,
    curvature_sign_mismatch,
    schema,
};

const char* kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double error_estimate)
        : Error(ErrorKind::quadrature, what), error_estimate(error_estimate) {}
    double error_estimate;
};

class SingularCurvature : public Error {
public:
    explicit SingularCurvature(const std::string& what) : Error(ErrorKind::singular_curvature, what) {}
};

class ParallelTangents : public Error {
public:
    explicit ParallelTangents(const std::string& what) : Error(ErrorKind::parallel_tangents, what) {}
};

class DegenerateTriangle : public Error {
public:
    explicit DegenerateTriangle(const std::string& what) : Error(ErrorKind::degenerate_triangle, what) {}
};

class NotSimilar : public Error {
public:
    NotSimilar(const std::string& what, double residual) : Error(ErrorKind::not_similar, what), residual(residual) {}
    double residual;
};

// Search exhausted. The bracket is whatever was left when it gave up.
class NotFound : public Error {
public:
    NotFound(const std::string& what, double lo, double hi) : Error(ErrorKind::not_found, what), lo(lo), hi(hi) {}
    double lo;
    double hi;
};

// Requested tangent length lies outside the open interval (lo, hi). hi may be infinite.
class Unreachable : public Error {
public:
    Unreachable(const std::string& what, double lo, double hi)
        : Error(ErrorKind::unreachable, what), lo(lo), hi(hi) {}
    double lo;
    double hi;
};

class NoPositiveRoot : public Error {
public:
    explicit NoPositiveRoot(const std::string& what) : Error(ErrorKind::no_positive_root, what) {}
};

// Fixed-alpha solution leaves A in the direction opposite to v_A.
class TangentSenseMismatch : public Error {
public:
    explicit TangentSenseMismatch(const std::string& what) : Error(ErrorKind::tangent_sense_mismatch, what) {}
};

class CurvatureSignMismatch : public Error {
public:
    explicit CurvatureSignMismatch(const std::string& what) : Error(ErrorKind::curvature_sign_mismatch, what) {}
};

class SchemaError : public Error {
public:
    SchemaError(const std::string& what, std::string field, int line = 0)
        : Error(ErrorKind::schema, what), field(std::move(field)), line(line) {}
    std::string field;
    int line;  // 0 when the document parsed but a field is wrong
};

}  // namespace elac
