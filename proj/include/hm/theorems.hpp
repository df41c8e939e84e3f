#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hm/hochschild.hpp"
#include "hm/ideals.hpp"
#include "hm/modcat.hpp"

namespace hm {

/// 0 -> I -> C -> H -> 0 over ce = enveloping(c), with H = B(Φ−,Φ−) for Φ: C -> C/I.
struct SESOfBimodules {
    CatPtr c;
    CatPtr ce;
    QuotientCategory quotient;
    CatModule sub;
    CatModule mid;
    CatModule quot;
    ModuleMap inclusion;
    ModuleMap projection;
};

/// Throws Error(InvalidIdeal), or Error(Internal) if the rank checks fail.
SESOfBimodules canonical_ses(const CatPtr& c, const TwoSidedIdeal& i);

/// The long exact sequence of Ext_{C^e}(C, −) applied to a short exact sequence.
///
/// Nodes are numbered 3n (Ext^n(C,sub)), 3n+1 (Ext^n(C,mid)), 3n+2 (Ext^n(C,quot)).
/// iota[n], pi[n] are the induced maps in degree n; delta[n] goes from degree n
/// of the third column to degree n+1 of the first, written in coordinates of
/// A^{n+1}/im d when n = N and the resolution ends at N+1.
struct LESReport {
    std::size_t max_deg = 0;
    std::vector<std::size_t> ext_ci;  // Ext^n(C, sub)
    std::vector<std::size_t> hc;      // Ext^n(C, mid)
    std::vector<std::size_t> ext_ch;  // Ext^n(C, quot)
    std::vector<Mat> iota;
    std::vector<Mat> pi;
    std::vector<Mat> delta;
    std::vector<bool> exact_at;
    std::vector<std::string> notes;

    bool all_exact() const;
    std::size_t node_dim(std::size_t node) const;
};

/// Throws Error(ResolutionTooShort) when res has fewer than N+2 terms.
LESReport les_from_ses(const Resolution& res, const SESOfBimodules& ses, std::size_t max_deg);

struct HypothesisAudit {
    bool idempotent = false;
    std::vector<bool> projective;  // I(x,−) per object
    std::string witness;

    bool ok() const;
};

HypothesisAudit audit_hypotheses(const TwoSidedIdeal& i);

/// A dimension equality certified by two independent computations.
struct Identification {
    std::string name;
    std::vector<std::size_t> lhs;
    std::vector<std::size_t> rhs;
    bool holds = false;
};

struct PipelineReport {
    HypothesisAudit audit;
    LESReport les;
    std::vector<std::size_t> hb;  // H^n(C/I), computed by hochschild_cohomology
    std::vector<Identification> identifications;

    bool ok() const;
};

/// Throws Error(HypothesisFailed) naming the failing object or the idempotency witness.
PipelineReport theorem_les_pipeline(const CatPtr& c, const TwoSidedIdeal& i, std::size_t max_deg = kDefaultMaxDegree);

/// Λ = triangular_matrix(t, u, m) with its triangular ideal.
PipelineReport cmp_pipeline(const CatPtr& t, const CatPtr& u, const Bimodule& m, std::size_t max_deg = kDefaultMaxDegree);

struct HappelReport {
    PipelineReport pipeline;
    std::vector<std::size_t> h_lambda;  // H^n(Λ)
    std::vector<std::size_t> h_u;       // H^n(U)
    std::vector<std::size_t> e;         // dim Ext^n_U(M,M)
    std::size_t h = 0;                  // dim Hom_U(M,M) - 1
    std::vector<Identification> checks;

    bool ok() const;
};

/// Throws Error(ZeroModule) for m = 0.
HappelReport happel_pipeline(const CatPtr& u, const CatModule& m, std::size_t max_deg = kDefaultMaxDegree);

/// A nonvanishing group found by the strong-idempotency check.
struct CheckFailure {
    std::string condition;  // "b" or "f"
    bool mirrored = false;  // found on the opposite category
    std::size_t sample = 0;
    std::size_t object = 0;
    std::size_t degree = 0;
    std::size_t dim = 0;
};

struct CheckReport {
    std::size_t max_deg = 0;
    std::size_t checks = 0;  // groups computed
    std::vector<CheckFailure> failures;
    std::vector<std::string> notes;

    bool pass() const { return failures.empty(); }
};

/// Quotient representables, quotient simples and the duals of right representables.
std::vector<CatModule> default_samples(const CatPtr& quotient_category);

/// Conditions (b) and (f) on the given samples over C/I, then on C^op with I^op
/// and default samples. Throws Error(SampleBaseMismatch).
CheckReport strongly_idempotent_check(const CatPtr& c, const TwoSidedIdeal& i, std::size_t max_deg,
                                      const std::vector<CatModule>& samples);
CheckReport strongly_idempotent_check(const CatPtr& c, const TwoSidedIdeal& i, std::size_t max_deg = kDefaultMaxDegree);

}  // namespace hm
