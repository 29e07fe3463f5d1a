#ifndef GERM_DEFORM_HPP
#define GERM_DEFORM_HPP

#include "germ/invariants.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace germ {

using Cx = std::complex<double>;

/// Constraint on deformation coefficients: a_alpha(k1) must equal (condition 2)
/// or differ from (condition 3) a_alpha(k2).
struct DeformConstraint {
    int k1 = 0, k2 = 0;
    Rat alpha;
    bool equal = true;
};

struct DeformationSpace {
    std::vector<std::vector<Rat>> lambda_p;    // per branch, ascending
    std::vector<std::vector<Rat>> lambda_free; // per branch, ascending
    std::vector<std::vector<Rat>> lambda;      // union, ascending
    std::vector<std::vector<Rat>> threshold;   // first-root contact matrix
    std::vector<DeformConstraint> constraints; // conditions (2) and (3)
};

DeformationSpace deformation_space(const GermAnalysis& A);

/// A point of the parameter space P = C x C x C* x D(f); the single-germ
/// family reads tau = tau1, s = sf (tau2, sg unused and zero).
struct ParamPoint {
    Cx tau1{0.0}, tau2{0.0};
    Cx sf{0.0}, sg{0.0};
    Cx u0{1.0};
    std::vector<std::map<Rat, Cx>> a; // a[k][alpha], alpha in Lambda_k
};

/// Conditions (1)-(3) plus u0 != 0, all as exact complex comparisons.
bool check_param(const DeformationSpace& D, const ParamPoint& p);

/// The normal family in the analytic parameter t (y = t^n): per root the
/// Lambda-part monomials with their conjugation phases, the frozen tails of f
/// (and of g in joint mode), and the unit deviations as x-polynomials with
/// truncated t-series coefficients.
struct NormalFamily {
    struct MainTerm {
        Rat alpha;  // exponent in y
        long e = 0; // n * alpha, exponent in t
        Cx phase;   // theta_k^{j alpha m_k}
    };
    struct TailTerm {
        long e = 0;
        Cx c;
    };

    long n = 1;  // y = t^n, n = lcm of the m_k
    long D = 0;  // sum d_k m_k
    long tmax = 0;
    bool joint = false;
    std::vector<int> root_branch; // flat root -> branch index
    std::vector<int> d;           // flat root -> multiplicity of its branch
    std::vector<std::vector<MainTerm>> main_terms; // per flat root
    std::vector<std::vector<TailTerm>> tail_f, tail_g;
    std::vector<std::vector<long>> e; // pairwise contact t-orders
    // unit deviations u - u(0,0) as polynomials in x over t-series
    std::vector<std::vector<Cx>> u1_f, u1_g; // [x-deg][t-deg]
    Cx u00_f{1.0}, u00_g{1.0};
    std::vector<std::map<Rat, Cx>> a_f, a_g; // distinguished coefficients
    DeformationSpace space;
};

NormalFamily normal_family(const GermAnalysis& A);

/// Parameter point reproducing f (which = 0) or g (which = 1, joint only).
ParamPoint distinguished_point(const NormalFamily& nf, int which = 0);

struct FamilyValue {
    Cx F, dx, dy;
    std::map<std::string, Cx> dv; // "tau1","tau2","sf","sg","u0","a:k:alpha"
};

/// F and its exact product-rule gradients at (x, t); y = t^n.  With `reduced`
/// all multiplicities are treated as 1 (the family G).
FamilyValue eval_family_t(const NormalFamily& nf, const ParamPoint& p, Cx x, Cx t,
                          bool reduced = false);
/// Same through y with the principal branch t = y^(1/n).
FamilyValue eval_family(const NormalFamily& nf, const ParamPoint& p, Cx x, Cx y,
                        bool reduced = false);

/// Value of the flat root m at (p, t).
Cx family_root(const NormalFamily& nf, const ParamPoint& p, int m, Cx t);

struct VerificationConfig {
    int samples = 200;                                  // per region per annulus
    std::vector<double> radii = {1e-2, 1e-3, 1e-4, 1e-5}; // |y| ladder
    double eps = 0.25;
    double C = 4.0;
    double growth_tol = 0.10; // allowed ratio growth per decade
    long covering_points = 100000;
    unsigned long long seed = 1;
    int flow_seeds = 50;
    double flow_tol = 1e-8;
    int path_retries = 64;
};

struct RatioReport {
    std::vector<std::string> directions;
    // maxima[direction][annulus]
    std::vector<std::vector<double>> maxima;
    bool bounded = false;
};

RatioReport verify_w(const NormalFamily& nf, const ParamPoint& p,
                     const VerificationConfig& cfg);

struct HornReport {
    struct Region {
        std::string name;
        long M = 0;
        std::vector<double> maxima;       // per annulus, over all directions
        std::vector<double> delta;        // Lemma-3 margin M - |t F_t / F|, per annulus
        long samples = 0;
        bool bounded = false;
    };
    std::vector<Region> regions;
    bool bounded = false;
    bool covering_ok = false;
    long covering_checked = 0;
    Cx witness_x, witness_t; // set when a covering gap is found
};

HornReport verify_wf_on_horns(const NormalFamily& nf, const ParamPoint& p,
                              const VerificationConfig& cfg);

enum class Stratum { P, X, U };

/// Kuo's vector field at (x, y) for the family direction dir (the dv = 1
/// component is implicit); returns (dx/dv, dy/dv).
std::pair<Cx, Cx> kuo_field(const NormalFamily& nf, const ParamPoint& p,
                            const ParamPoint& dir, Cx x, Cx y, Stratum st);

/// Piecewise-linear path in P from the f-point to the g-point along which
/// every point satisfies check_param; straight segment first, random complex
/// midpoints on violation.
std::vector<ParamPoint> joint_path(const NormalFamily& nf,
                                   const VerificationConfig& cfg);

/// Joint two-germ normal family; requires matching invariants and exponent
/// sets under the canonical branch order.
NormalFamily joint_family(const GermAnalysis& Af, const GermAnalysis& Ag);

struct FlowReport {
    struct Seed {
        Cx x0, y0, x1, y1;
        Stratum stratum = Stratum::U;
        double drift = 0.0;    // relative |F| drift (off-zero seeds)
        double distance = 0.0; // distance to the target root locus (zero seeds)
        bool ok = false;
    };
    std::vector<Seed> seeds;
    double max_drift = 0.0;
    double max_distance = 0.0;
    bool ok = false;
};

FlowReport flow_trivialize(const NormalFamily& nf,
                           const std::vector<ParamPoint>& path,
                           const VerificationConfig& cfg);

} // namespace germ

#endif
