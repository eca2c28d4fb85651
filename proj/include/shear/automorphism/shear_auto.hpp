#pragma once

// A(w, z) = (e^{2 pi i a} w + phi_a(z), e^{2 pi i a} z) and its closed-form
// iterates A^N = A_{N a}. Norm on C^2 is max(|w|, |z|).

#include "shear/lacunary.hpp"

namespace shear {

struct Point2 {
    CertifiedComplex w;
    CertifiedComplex z;

    static Point2 from_rat(const BigRat &w_re, const BigRat &w_im, const BigRat &z_re, const BigRat &z_im);
    // Enclosure of max(|w|, |z|).
    RealInterval norm() const;
    bool contains(const Point2 &inner) const;
    std::string to_string(int digits = 20) const;
};

bool intersects(const Point2 &a, const Point2 &b);
// Largest of the two coordinate radii.
Real radius(const Point2 &p);

struct Iterate {
    Point2 p;
    // |w_N| = |w + S| and |z_N| = |z| hold whether or not the phase of N a is
    // known, since the rotation factor has modulus one.
    RealInterval w_abs;
    RealInterval z_abs;
    bool phase_known = true;
    Real tail_bound;

    RealInterval norm() const { return max(w_abs, z_abs); }
};

struct Matrix2 {
    CertifiedComplex a, b, c, d;
};

struct DerivativeReport {
    Matrix2 m;
    RealInterval det_abs;
    // ||D A^N|| >= |phi'_{N a}(z)| (any operator norm dominating the
    // off-diagonal entry, in particular the max norm).
    Real norm_lower;
    SeriesValue phi_prime;
};

class ShearAuto {
public:
    ShearAuto(AngleSource angle, ExponentSubseq qp, CoefficientSeq u, long M);

    const AngleSource &angle() const { return angle_; }
    const ExponentSubseq &exponents() const { return qp_; }
    const CoefficientSeq &coefficients() const { return u_; }
    long truncation() const { return M_; }
    bool entire() const;  // fast theta angle

    Point2 apply(const Point2 &p) const;
    Iterate iterate_closed(const Point2 &p, const SymInt &N) const;
    // N applications of apply; test oracle only.
    Point2 iterate_steps(const Point2 &p, long N) const;
    Point2 apply_conjugate(const Point2 &p) const;
    Point2 inverse_apply(const Point2 &p) const;
    DerivativeReport derivative(const Point2 &p, const SymInt &N) const;
    // Certified upper bound on max(|w_N - w|, |z_N - z|).
    Real displacement_upper(const Point2 &p, const SymInt &N) const;

private:
    Iterate iterate_with(const AngleSource &angle, const Point2 &p, const SymInt &N) const;
    void check_domain(const CertifiedComplex &z) const;

    AngleSource angle_;
    ExponentSubseq qp_;
    CoefficientSeq u_;
    long M_;
};

} // namespace shear
