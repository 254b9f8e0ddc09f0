#include "biaxial/blowup.hpp"

#include <algorithm>
#include <cmath>

namespace biaxial {

double blowup_density(const Mat3& xi, const FrankConstants& fc, const Vec3& p, const Vec3& q) {
    // grad u, grad v from the reduced variables: u = (u1, u2, 0),
    // v = (0, v1, v2) with v2 = -u1 (tangency at p=(0,0,1), q=(1,0,0)).
    Mat3 Du, Dv;
    for (int a = 0; a < 3; ++a) {
        Du[0][a] = xi[0][a];
        Du[1][a] = xi[1][a];
        Du[2][a] = 0.0;
        Dv[0][a] = 0.0;
        Dv[1][a] = xi[2][a];
        Dv[2][a] = -xi[0][a];
    }

    const double div_u = Du.trace();
    const double div_v = Dv.trace();
    const Vec3 curl_u = curl_of(Du);
    const Vec3 curl_v = curl_of(Dv);

    // Jacobian of the frozen cross-term field p x v + u x q.
    Mat3 Dw;
    for (int a = 0; a < 3; ++a) {
        Vec3 col = cross(p, Dv.col(a)) + cross(Du.col(a), q);
        for (int i = 0; i < 3; ++i) Dw[i][a] = col[i];
    }
    const double div_w = Dw.trace();
    const Vec3 curl_w = curl_of(Dw);

    auto sq = [](double x) { return x * x; };
    return 0.5 * fc.k[0] * sq(div_u)                          //
           + 0.5 * fc.k[1] * sq(dot(p, curl_u))               //
           + 0.5 * fc.k[2] * norm_sq(cross(p, curl_u))        //
           + 0.5 * fc.k[3] * sq(div_v)                        //
           + 0.5 * fc.k[4] * sq(dot(q, curl_v))               //
           + 0.5 * fc.k[5] * norm_sq(cross(q, curl_v))        //
           + fc.alpha1() * null_lagrangian_t(Du)              //
           + fc.alpha2() * null_lagrangian_t(Dv)              //
           + 0.5 * fc.k[6] * sq(dot(p, cross(q, curl_v)))     //
           + 0.5 * fc.k[7] * sq(dot(q, cross(p, curl_u)))     //
           + 0.5 * fc.k[8] * sq(dot(q, curl_w))               //
           + 0.5 * fc.k[9] * sq(dot(p, curl_w))               //
           + 0.5 * fc.k[10] * norm_sq(curl_w)                 //
           + 0.5 * fc.k[11] * sq(div_w);
}

QuadraticForm blowup_form(const FrankConstants& fc, const Vec3& p, const Vec3& q) {
    QuadraticForm form;
    form.p = p;
    form.q = q;

    auto basis = [](int slot) {
        Mat3 xi;
        xi[slot / 3][slot % 3] = 1.0;
        return xi;
    };
    std::array<double, 9> diag;
    for (int i = 0; i < 9; ++i) diag[i] = blowup_density(basis(i), fc, p, q);
    for (int i = 0; i < 9; ++i) {
        form.a[i][i] = diag[i];
        for (int j = i + 1; j < 9; ++j) {
            Mat3 xi = basis(i);
            xi[j / 3][j % 3] = 1.0;
            double pol = 0.5 * (blowup_density(xi, fc, p, q) - diag[i] - diag[j]);
            form.a[i][j] = form.a[j][i] = pol;
        }
    }
    form.legendre_min = symmetric_eigenvalues(form.a)[0];
    return form;
}

double evaluate(const QuadraticForm& form, const Mat3& xi) {
    std::array<double, 9> v;
    for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 3; ++a) v[i * 3 + a] = xi[i][a];
    double e = 0.0;
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) e += v[i] * form.a[i][j] * v[j];
    return e;
}

EllipticityMargin ellipticity_margin(const QuadraticForm& form, const FrankConstants& fc) {
    EllipticityMargin r;
    r.lambda_min = symmetric_eigenvalues(form.a)[0];
    r.threshold = 0.5 * fc.alpha3();
    r.passes = r.lambda_min >= r.threshold - 1e-10;
    return r;
}

std::array<double, 9> symmetric_eigenvalues(const std::array<std::array<double, 9>, 9>& a_in) {
    auto a = a_in;
    constexpr int n = 9;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-26) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int r = 0; r < n; ++r) {
                    const double arp = a[r][p], arq = a[r][q];
                    a[r][p] = c * arp - s * arq;
                    a[r][q] = s * arp + c * arq;
                }
                for (int r = 0; r < n; ++r) {
                    const double apr = a[p][r], aqr = a[q][r];
                    a[p][r] = c * apr - s * aqr;
                    a[q][r] = s * apr + c * aqr;
                }
            }
        }
    }
    std::array<double, 9> w;
    for (int i = 0; i < n; ++i) w[i] = a[i][i];
    std::sort(w.begin(), w.end());
    return w;
}

}  // namespace biaxial
