#pragma once

#include <tuple>

#include "biaxial/fields.hpp"

namespace biaxial {

// Target manifold N = {(p,q) in S^2 x S^2 : p.q = 0}.

struct RetractResult {
    Vec3 n;
    Vec3 m;
};

// Normalize n, Gram-Schmidt m against n, normalize m.
// Throws DegenerateInput when |nRaw| < 0.5 or the Gram-Schmidt
// remainder of mRaw has norm < 0.1 (implementation thresholds).
RetractResult retract(const Vec3& n_raw, const Vec3& m_raw);

// Retracts every node of the field in place.
void retract_field(DirectorPairField& field);

struct ConstraintResiduals {
    double max_norm_err_n = 0.0;  // max | |n| - 1 |
    double max_norm_err_m = 0.0;  // max | |m| - 1 |
    double max_dot = 0.0;         // max | n.m |
};

ConstraintResiduals constraint_residuals(const DirectorPairField& field);

// Splits a force pair into tangent parts plus constraint-normal
// components lambda_1 n + mu m and lambda_2 m + mu n.
struct TangentSplit {
    Vec3 fn_tan;
    Vec3 fm_tan;
    double lambda1;
    double lambda2;
    double mu;
};

// Requires (n,m) on N to 1e-8; throws ConstraintViolated otherwise.
TangentSplit tangent_project(const Vec3& n, const Vec3& m, const Vec3& fn, const Vec3& fm);

}  // namespace biaxial
