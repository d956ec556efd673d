#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qthresh::model {

/// Parameters of an [m,1] code correcting one qubit error, together with the
/// circuit-depth constants the analytic failure model is built from.
struct CodeParameters {
    std::string name;
    int m = 0;          // qubits per code block
    int alpha = 0;      // encoding-circuit logical depth per level
    int beta = 0;       // decoding-circuit logical depth per level
    double delta = 0;   // average logical depth of one fault-tolerant gate
    double c = 0;       // combinatorial failure constant

    /// Default failure constant: the number of 2-error patterns in a block.
    static double default_c(int m);

    /// Builds a validated parameter set. When `c` is not supplied it defaults
    /// to m(m-1)/2.
    static CodeParameters make(std::string name, int m, int alpha, int beta, double delta,
                               std::optional<double> c = std::nullopt);

    /// Throws std::invalid_argument naming the violated constraint.
    void validate() const;

    /// The analytic threshold model is documented for m >= 3; m == 2 is
    /// accepted for the exact block oracle only.
    bool meets_model_minimum() const { return m >= 3; }
};

/// A (concatenation level, error-correction period) pair. The period r counts
/// operations applied per qubit between successive corrections; it is real
/// for optimization and integer in circuit semantics.
struct ScheduleQuery {
    int k = 0;
    double r = 0;

    void validate() const;
    bool r_is_integer() const;
};

struct ThresholdPoint {
    ScheduleQuery query;
    double depth = 0;     // L = alpha*k + beta*k + r*delta
    double log_p_th = 0;  // natural log of the threshold value
    double p_th = 0;      // exp(log_p_th)
};

struct ThresholdCurve {
    CodeParameters code;
    int k = 0;
    std::vector<ThresholdPoint> points;  // ordered by strictly increasing r
};

enum class ErrorModel {
    kExact,    // 1 - (1-p)^depth
    kLeading,  // min(1, depth * p)
};

/// Logical depth of one error-correction period: alpha*k + beta*k + r*delta.
double period_depth(const CodeParameters& code, const ScheduleQuery& q);

/// Probability that a physical qubit picks up at least one error across
/// `depth` gate steps at per-operation error probability p.
double per_qubit_error(double p, double depth, ErrorModel mode);

/// Leading-order unrecoverable-block probability c*q^2. Deliberately not
/// clamped to [0,1]: values above 1 signal breakdown of the perturbative
/// regime and are reported as such by callers.
double block_failure_leading(double q, double c);

/// Leading-order failure of one top-level logical qubit after k levels of
/// concatenation: (1/c) * [c*L*p]^(2^k) with L = period_depth. Equals the
/// k-fold iterate of e -> c*e^2 from e0 = L*p. Evaluated in log space; p = 0
/// returns exactly 0.
double top_level_failure_leading(double p, const CodeParameters& code, const ScheduleQuery& q);

/// Log-space form of top_level_failure_leading. Throws std::domain_error for
/// p = 0 (the log diverges; use the linear form, which returns exact 0).
double log_top_level_failure_leading(double p, const CodeParameters& code,
                                     const ScheduleQuery& q);

/// True while the perturbative model is self-consistent: c*L*p < 1.
bool regime_valid(double p, const CodeParameters& code, const ScheduleQuery& q);

/// Whether k-level concatenation reduces the per-period error: true iff
/// (1/c)[c*L*p]^(2^k) <= r*p, compared in log space. Equality within 1e-12
/// relative (log domain) counts as true, so the boundary p = p_th holds.
bool threshold_condition(double p, const CodeParameters& code, const ScheduleQuery& q);

/// Threshold value p_th = (1/c) * (r / L^(2^k))^(1/(2^k - 1)), evaluated as
/// log_p_th = -ln c + [ln r - 2^k ln L] / (2^k - 1). Log space is mandatory:
/// L^(2^k) overflows linear representation for k around 9 and beyond.
ThresholdPoint threshold_value(const CodeParameters& code, const ScheduleQuery& q);

/// One ThresholdPoint per entry of `r_values` (strictly increasing, all > 0)
/// at fixed level k.
ThresholdCurve scan_threshold_curve(const CodeParameters& code, int k,
                                    std::span<const double> r_values);

}  // namespace qthresh::model
