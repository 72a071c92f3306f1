#include "elac/errors.hpp"

namespace elac {

const char* kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::domain: return "DomainError";
        case ErrorKind::quadrature: return "QuadratureError";
        case ErrorKind::singular_curvature: return "SingularCurvature";
        case ErrorKind::parallel_tangents: return "ParallelTangents";
        case ErrorKind::degenerate_triangle: return "DegenerateTriangle";
        case ErrorKind::not_similar: return "NotSimilar";
        case ErrorKind::not_found: return "NotFound";
        case ErrorKind::unreachable: return "Unreachable";
        case ErrorKind::no_positive_root: return "NoPositiveRoot";
        case ErrorKind::tangent_sense_mismatch: return "TangentSenseMismatch";
        case ErrorKind::curvature_sign_mismatch: return "CurvatureSignMismatch";
        case ErrorKind::schema: return "SchemaError";
    }
    return "Error";
}

}  // namespace elac
