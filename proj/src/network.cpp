#include "finnet/network.hpp"

#include <cmath>
#include <sstream>

#include "finnet/numerics/kernels.hpp"

namespace finnet {

Vector FinancialNetwork::asset_income() const { return asset_shares * prices; }

bool ValidationReport::has(ViolationCode code) const noexcept {
    for (const auto& v : violations)
        if (v.code == code) return true;
    for (const auto& v : warnings)
        if (v.code == code) return true;
    return false;
}

std::string ValidationReport::summary() const {
    std::ostringstream out;
    for (const auto& v : violations) out << "error: " << v.message << '\n';
    for (const auto& v : warnings) out << "warning: " << v.message << '\n';
    return out.str();
}

ValidationFailed::ValidationFailed(ValidationReport report)
    : Error("invalid financial network:\n" + report.summary()), report_(std::move(report)) {}

namespace {

bool finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

ValidationReport validate(const FinancialNetwork& net) {
    ValidationReport rep;
    auto fail = [&](ViolationCode c, std::string msg) {
        rep.violations.push_back({c, std::move(msg)});
    };
    const std::size_t n = net.cross_holdings.rows();
    const std::size_t m = net.prices.size();

    if (n == 0 || !net.cross_holdings.square()) {
        fail(ViolationCode::Shape, "cross-holdings matrix must be square and non-empty");
        return rep;
    }
    if (net.asset_shares.rows() != n || net.asset_shares.cols() != m) {
        fail(ViolationCode::Shape, "asset-share matrix must be n x m (m = number of prices)");
    }
    if (net.failure_costs.size() != n) {
        fail(ViolationCode::Shape, "failure-cost vector must have length n");
    }
    if (net.thresholds.size() != n) {
        fail(ViolationCode::Shape, "threshold vector must have length n");
    }
    if (!rep.ok()) return rep;

    if (!net.cross_holdings.all_finite() || !net.asset_shares.all_finite() ||
        !finite(net.prices) || !finite(net.failure_costs) || !finite(net.thresholds)) {
        fail(ViolationCode::NonFinite, "non-finite entry");
        return rep;
    }

    const Matrix& C = net.cross_holdings;
    for (std::size_t i = 0; i < n; ++i) {
        if (C(i, i) != 0.0) {
            std::ostringstream s;
            s << "nonzero diagonal: C(" << i + 1 << "," << i + 1 << ") = " << C(i, i);
            fail(ViolationCode::NonzeroDiagonal, s.str());
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (C(i, j) < 0.0) {
                std::ostringstream s;
                s << "negative cross-holding C(" << i + 1 << "," << j + 1 << ") = " << C(i, j);
                fail(ViolationCode::NegativeCrossHolding, s.str());
            }
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n; ++i) col += C(i, j);
        if (!(col < 1.0)) {
            std::ostringstream s;
            s << "column sum not < 1: column " << j + 1 << " sums to " << col;
            fail(ViolationCode::ColumnSumNotBelowOne, s.str());
        }
    }
    for (double d : net.asset_shares.data()) {
        if (d < 0.0) {
            fail(ViolationCode::NegativeAssetShare, "negative asset share");
            break;
        }
    }
    bool any_positive = false;
    for (double p : net.prices) {
        if (p < 0.0) fail(ViolationCode::NegativePrice, "negative asset price");
        any_positive = any_positive || p > 0.0;
    }
    if (!any_positive) fail(ViolationCode::NoPositivePrice, "price vector has no positive entry");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(net.failure_costs[i] > 0.0)) {
            std::ostringstream s;
            s << "failure cost beta_" << i + 1 << " must be > 0";
            fail(ViolationCode::NonPositiveFailureCost, s.str());
        }
    }
    try {
        LuFactorization lu(C);
    } catch (const SingularMatrix&) {
        rep.warnings.push_back(
            {ViolationCode::SingularCrossHoldings, "cross-holdings matrix is singular"});
    }
    return rep;
}

void require_valid(const FinancialNetwork& net) {
    auto rep = validate(net);
    if (!rep.ok()) throw ValidationFailed(std::move(rep));
}

Indicator indicator(std::span<const double> x) {
    Indicator phi(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) phi[i] = x[i] < 0.0 ? 1 : 0;
    return phi;
}

OrthantIndex::OrthantIndex(std::uint64_t k, std::size_t n) : k_(k), n_(n) {
    if (n == 0 || n > kMaxOrthantDimension) {
        throw DimensionTooLarge("orthant dimension must be in [1, 62]");
    }
    if (k >= count()) throw std::out_of_range("orthant index exceeds 2^n - 1");
}

OrthantIndex OrthantIndex::failed(std::size_t n) {
    if (n == 0 || n > kMaxOrthantDimension) {
        throw DimensionTooLarge("orthant dimension must be in [1, 62]");
    }
    return {(std::uint64_t{1} << n) - 1, n};
}

OrthantIndex OrthantIndex::from_indicator(const Indicator& phi) {
    const std::size_t n = phi.size();
    if (n == 0 || n > kMaxOrthantDimension) {
        throw DimensionTooLarge("orthant dimension must be in [1, 62]");
    }
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < n; ++i) k = (k << 1) | (phi[i] ? 1U : 0U);
    return {k, n};
}

Indicator OrthantIndex::characteristic() const {
    Indicator phi(n_);
    for (std::size_t i = 0; i < n_; ++i) phi[i] = fails(i) ? 1 : 0;
    return phi;
}

Vector OrthantIndex::signs() const {
    Vector s(n_);
    for (std::size_t i = 0; i < n_; ++i) s[i] = fails(i) ? -1.0 : 1.0;
    return s;
}

OrthantIndex orthant_of(std::span<const double> x) {
    return OrthantIndex::from_indicator(indicator(x));
}

bool in_orthant(std::span<const double> x, const OrthantIndex& k) {
    if (x.size() != k.dimension()) throw DimensionMismatch("in_orthant: dimension differs");
    for (std::size_t i = 0; i < x.size(); ++i)
        if ((x[i] < 0.0) != k.fails(i)) return false;
    return true;
}

ShiftedModel::ShiftedModel(FinancialNetwork net) : net_(std::move(net)) {
    const std::size_t n = net_.size();
    if (!net_.cross_holdings.square() || net_.thresholds.size() != n ||
        net_.failure_costs.size() != n || net_.asset_shares.rows() != n ||
        net_.asset_shares.cols() != net_.prices.size()) {
        throw DimensionMismatch("ShiftedModel: inconsistent network dimensions");
    }
    Matrix shift = net_.cross_holdings - Matrix::identity(n);
    r_ = add(shift * net_.thresholds, net_.asset_income());
    try {
        resolvent_lu_.emplace(Matrix::identity(n) - net_.cross_holdings);
    } catch (const SingularMatrix&) {
        resolvent_lu_.reset();
    }
}

Vector ShiftedModel::resolvent(std::span<const double> rhs) const {
    if (!resolvent_lu_) throw SingularMatrix("I - C is singular");
    return resolvent_lu_->solve(rhs);
}

Vector ShiftedModel::step(std::span<const double> x) const {
    if (x.size() != size()) throw DimensionMismatch("step: state has wrong length");
    Vector next = net_.cross_holdings * x;
    const auto& beta = net_.failure_costs;
    for (std::size_t i = 0; i < next.size(); ++i) {
        next[i] += r_[i];
        if (x[i] < 0.0) next[i] -= beta[i];
    }
    return next;
}

ShiftedModel ShiftedModel::with_asset_shares(Matrix d) const {
    FinancialNetwork copy = net_;
    copy.asset_shares = std::move(d);
    return ShiftedModel(std::move(copy));
}

double Trajectory::replay_error(const ShiftedModel& model) const {
    double worst = 0.0;
    for (std::size_t t = 0; t + 1 < states.size(); ++t) {
        worst = std::max(worst, max_abs_diff(model.step(states[t]), states[t + 1]));
    }
    return worst;
}

Trajectory simulate(const ShiftedModel& model, std::span<const double> x0, std::size_t T) {
    if (x0.size() != model.size()) throw DimensionMismatch("simulate: x0 has wrong length");
    Trajectory traj;
    traj.states.reserve(T + 1);
    traj.states.emplace_back(x0.begin(), x0.end());
    for (std::size_t t = 0; t < T; ++t) traj.states.push_back(model.step(traj.states.back()));
    return traj;
}

bool positivity_holds(const FinancialNetwork& net) {
    const Vector income = net.asset_income();
    for (std::size_t i = 0; i < income.size(); ++i)
        if (income[i] - net.failure_costs[i] < 0.0) return false;
    return true;
}

}  // namespace finnet
