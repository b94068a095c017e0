#include "finnet/robust.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <sstream>
#include <stdexcept>

#include "finnet/invariance.hpp"
#include "finnet/numerics/linalg.hpp"

namespace finnet {

IntervalNetwork IntervalNetwork::around(const Matrix& c, Vector r, double rel) {
    return {(1.0 - rel) * c, (1.0 + rel) * c, std::move(r)};
}

std::vector<std::string> validate(const IntervalNetwork& inet) {
    std::vector<std::string> issues;
    const std::size_t n = inet.r.size();
    if (n == 0 || inet.c_lower.rows() != n || inet.c_lower.cols() != n ||
        inet.c_upper.rows() != n || inet.c_upper.cols() != n) {
        issues.emplace_back("interval bounds must be n x n with n = length of r");
        return issues;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double lo = inet.c_lower(i, j), hi = inet.c_upper(i, j);
            std::ostringstream s;
            if (i == j) {
                if (lo != 0.0 || hi != 0.0) {
                    s << "nonzero diagonal at (" << i + 1 << "," << i + 1 << ")";
                    issues.push_back(s.str());
                }
            } else if (!(lo > 0.0) || !(lo <= hi)) {
                s << "entry (" << i + 1 << "," << j + 1 << ") needs 0 < lower <= upper";
                issues.push_back(s.str());
            }
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n; ++i) col += inet.c_upper(i, j);
        if (!(col < 1.0)) {
            std::ostringstream s;
            s << "column sum not < 1 in upper bound, column " << j + 1;
            issues.push_back(s.str());
        }
    }
    return issues;
}

void require_valid(const IntervalNetwork& inet) {
    const auto issues = validate(inet);
    if (issues.empty()) return;
    std::string msg = "invalid interval network:";
    for (const auto& s : issues) msg += "\n  " + s;
    throw ModelError(msg);
}

ShiftedModel linear_model(const Matrix& c, const Vector& r) {
    const std::size_t n = r.size();
    FinancialNetwork net{c, Matrix::identity(n), r, Vector(n, 1.0), Vector(n, 0.0)};
    return ShiftedModel(std::move(net));
}

std::pair<Vector, Vector> extremal_fixed_points(const IntervalNetwork& inet) {
    const std::size_t n = inet.size();
    const Matrix I = Matrix::identity(n);
    return {solve_linear(I - inet.c_lower, inet.r), solve_linear(I - inet.c_upper, inet.r)};
}

namespace {

Polyhedron healthy_region(const Matrix& c, const Vector& r, const char* label) {
    const auto model = linear_model(c, r);
    const Vector x_bar = model.resolvent(r);
    if (std::any_of(x_bar.begin(), x_bar.end(), [](double v) { return v < 0.0; })) {
        throw NoPositiveEquilibrium(std::string(label) +
                                    ": (I - C)^{-1} r has a negative entry");
    }
    auto p = maximal_invariant_region(model, OrthantIndex::healthy(r.size()));
    p.label = label;
    return p;
}

}  // namespace

Polyhedron robust_invariant_set(const IntervalNetwork& inet) {
    return healthy_region(inet.c_lower, inet.r, "robust_invariant_set");
}

Polyhedron last_hope_set(const IntervalNetwork& inet) {
    return healthy_region(inet.c_upper, inet.r, "last_hope_set");
}

bool last_hope_membership(const IntervalNetwork& inet, std::span<const double> x0, double tol) {
    return last_hope_set(inet).contains(x0, tol);
}

std::string_view to_string(SamplerKind k) noexcept {
    switch (k) {
        case SamplerKind::ConstantLower: return "constant-lower";
        case SamplerKind::ConstantUpper: return "constant-upper";
        case SamplerKind::IidUniform: return "iid-uniform";
        case SamplerKind::UserSequence: return "user-sequence";
    }
    return "unknown";
}

SamplerKind sampler_kind_from_string(std::string_view s) {
    for (auto k : {SamplerKind::ConstantLower, SamplerKind::ConstantUpper,
                   SamplerKind::IidUniform, SamplerKind::UserSequence})
        if (to_string(k) == s) return k;
    throw std::invalid_argument("unknown sampler '" + std::string(s) + "'");
}

SwitchingSampler SwitchingSampler::constant_lower() {
    return SwitchingSampler(SamplerKind::ConstantLower);
}

SwitchingSampler SwitchingSampler::constant_upper() {
    return SwitchingSampler(SamplerKind::ConstantUpper);
}

SwitchingSampler SwitchingSampler::iid_uniform(std::uint64_t seed) {
    SwitchingSampler s(SamplerKind::IidUniform);
    s.rng_.seed(seed);
    return s;
}

SwitchingSampler SwitchingSampler::user_sequence(std::vector<Matrix> sequence) {
    if (sequence.empty()) throw std::invalid_argument("user switching sequence is empty");
    SwitchingSampler s(SamplerKind::UserSequence);
    s.sequence_ = std::move(sequence);
    return s;
}

Matrix SwitchingSampler::next(const IntervalNetwork& inet) {
    switch (kind_) {
        case SamplerKind::ConstantLower: return inet.c_lower;
        case SamplerKind::ConstantUpper: return inet.c_upper;
        case SamplerKind::IidUniform: {
            const std::size_t n = inet.size();
            Matrix c(n, n);
            std::uniform_real_distribution<double> u(0.0, 1.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j) continue;
                    const double lo = inet.c_lower(i, j), hi = inet.c_upper(i, j);
                    c(i, j) = lo + (hi - lo) * u(rng_);
                }
            return c;
        }
        case SamplerKind::UserSequence: {
            Matrix c = sequence_[cursor_ % sequence_.size()];
            ++cursor_;
            const std::size_t n = inet.size();
            if (c.rows() != n || c.cols() != n) {
                throw DimensionMismatch("user switching matrix has the wrong shape");
            }
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const bool ok = i == j ? c(i, j) == 0.0
                                           : c(i, j) >= inet.c_lower(i, j) &&
                                                 c(i, j) <= inet.c_upper(i, j);
                    if (!ok) throw ModelError("user switching matrix leaves the interval");
                }
            return c;
        }
    }
    return inet.c_lower;
}

SandwichResult sandwich_bounds(const IntervalNetwork& inet, std::span<const double> x0,
                               std::size_t T, SwitchingSampler& sampler, double tol) {
    require_valid(inet);
    const std::size_t n = inet.size();
    if (x0.size() != n) throw DimensionMismatch("sandwich_bounds: x0 has wrong length");
    SandwichResult out;
    std::tie(out.x_minus_bar, out.x_plus_bar) = extremal_fixed_points(inet);

    auto advance = [&](const Matrix& c, const Vector& x) { return add(c * x, inet.r); };
    Vector lo(x0.begin(), x0.end()), mid = lo, hi = lo;
    out.lower.push_back(lo);
    out.actual.push_back(mid);
    out.upper.push_back(hi);
    for (std::size_t t = 0; t < T; ++t) {
        if (std::any_of(mid.begin(), mid.end(), [](double v) { return v < 0.0; })) {
            throw ModelError("sandwich_bounds: trajectory left the healthy orthant at t = " +
                             std::to_string(t));
        }
        mid = advance(sampler.next(inet), mid);
        lo = advance(inet.c_lower, lo);
        hi = advance(inet.c_upper, hi);
        out.lower.push_back(lo);
        out.actual.push_back(mid);
        out.upper.push_back(hi);
        if (out.ordered) {
            for (std::size_t i = 0; i < n; ++i) {
                const double scale = tol * (1.0 + std::abs(mid[i]));
                if (lo[i] > mid[i] + scale || mid[i] > hi[i] + scale) {
                    out.ordered = false;
                    out.first_violation = t + 1;
                    break;
                }
            }
        }
    }
    return out;
}

RobustReport robust_report(const IntervalNetwork& inet) {
    require_valid(inet);
    RobustReport rep;
    std::tie(rep.x_minus_bar, rep.x_plus_bar) = extremal_fixed_points(inet);
    rep.robust_set = robust_invariant_set(inet);
    rep.last_hope = last_hope_set(inet);
    return rep;
}

}  // namespace finnet
