#pragma once

#include "schreierlab/norm_result.hpp"
#include "schreierlab/partition.hpp"

namespace schreierlab {

/// The space with norm max{||.||_0, ||.||_1, ||.||_2} built on the blocks
/// F_j = [s_(a,1)(j-1), s_(a,1)(j) - 1]. Optionally extended by the extra
/// seminorm over the sets A_i = [min F_(m_i), s_(b+1, min F_(m_i))(1) - 1].
class FourSpace {
 public:
  explicit FourSpace(Ordinal alpha) : alpha_(std::move(alpha)), blocks_(std::make_shared<Partition>(alpha_, 1)) {}

  FourSpace(Ordinal alpha, Ordinal beta, std::vector<Int> m_seq, std::vector<Int> n_seq)
      : FourSpace(std::move(alpha)) {
    if (m_seq.empty() || m_seq.size() != n_seq.size())
      throw Error(ErrorKind::InvalidArgument, "m and n sequences must be nonempty and of equal length");
    beta_ = std::move(beta);
    Ordinal next = beta_->successor();
    for (std::size_t i = 0; i < m_seq.size(); ++i) {
      const Int& m = m_seq[i];
      const Int& n = n_seq[i];
      if (!(m >= 1 && m < n)) throw Error(ErrorKind::InvalidArgument, "need 1 <= m_i < n_i");
      if (i + 1 < m_seq.size() && !(2 * n - 1 < m_seq[i + 1]))
        throw Error(ErrorKind::InvalidArgument, "need 2 n_i - 1 < m_(i+1)");
      Int lo = f_min(m);
      Int end = gamma(next, lo);
      if (!(end < f_min(n)))
        throw Error(ErrorKind::InvalidArgument,
                    "need s_(b+1, min F_m)(1) < min F_n at i = " + std::to_string(i + 1));
      extra_.push_back({FiniteSet::interval(lo, end - 1), {}});
      extra_.back().average = std::make_shared<RepeatedAverage>(repeated_average(next, extra_.back().set));
    }
    m_seq_ = std::move(m_seq);
    n_seq_ = std::move(n_seq);
  }

  const Ordinal& alpha() const { return alpha_; }
  const std::optional<Ordinal>& beta() const { return beta_; }
  const std::vector<Int>& m_seq() const { return m_seq_; }
  const std::vector<Int>& n_seq() const { return n_seq_; }

  FiniteSet f_block(std::uint64_t j) const { return blocks_->block(j); }
  Int f_min(const Int& j) const { return blocks_->start(detail::to_index(j, "block index") - 1); }

  std::size_t extra_count() const { return extra_.size(); }
  const FiniteSet& extra_set(std::size_t i) const { return extra_.at(i - 1).set; }

  Real seminorm0(const BlockVector& x) const { return to_real(x.max_abs()); }

  Real seminorm1(const BlockVector& x) const {
    Rational total = 0;
    for (const auto& t : terms(x)) total += t.sums.sq_sum;
    return sqrt(to_real(total));
  }

  /// The partial-sum seminorm. For a fixed set of blocks inside the window
  /// [N, 2N-1] every coefficient 1/sqrt(j-N+1) grows with N, so the
  /// supremum over N is attained at N equal to some block index in use.
  Real seminorm2(const BlockVector& x) const {
    auto ts = terms(x);
    Real best = 0;
    for (const auto& anchor : ts) {
      std::uint64_t N = anchor.k;
      Real prefix = 0;
      for (const auto& t : ts) {
        if (t.k < N) continue;
        if (t.k > 2 * N - 1) break;
        Real c = 1 / sqrt(Real(t.k - N + 1));
        Real peak = to_real(std::max(abs(t.partial.min), abs(t.partial.max)));
        best = std::max(best, Real(prefix + c * peak));
        prefix += c * to_real(abs(t.partial.full));
      }
    }
    return best;
  }

  Real seminorm_beta(const BlockVector& x) const {
    if (!beta_) throw Error(ErrorKind::InvalidArgument, "space has no extra seminorm");
    Rational best = 0;
    for (const auto& e : extra_) {
      auto s = weighted_sums(*e.average, x);
      best = std::max(best, Rational(e.set.min() * s.abs_sum));
    }
    return to_real(best);
  }

  NormValue norm(const BlockVector& x) const {
    std::vector<NormValue> parts = {NormValue::exact(seminorm0(x), "0"), NormValue::exact(seminorm1(x), "1"),
                                    NormValue::exact(seminorm2(x), "2")};
    if (beta_) parts.push_back(NormValue::exact(seminorm_beta(x), "beta"));
    return max_of(parts);
  }

  /// 1 on F_N u ... u F_(2N-1).
  BlockVector e_block(std::uint64_t N) const {
    if (N == 0) throw Error(ErrorKind::InvalidArgument, "N >= 1");
    return BlockVector::indicator(FiniteSet::interval(blocks_->start(N - 1), blocks_->start(2 * N - 1) - 1));
  }

  /// Value 1/sqrt(j-N+1) on F_j for j = N..2N-1, alternating in sign with
  /// the index when requested. The root is rounded to a rational at the
  /// working precision.
  BlockVector xy_block(std::uint64_t N, bool alternating) const {
    if (N == 0) throw Error(ErrorKind::InvalidArgument, "N >= 1");
    BlockVector x;
    for (std::uint64_t j = N; j <= 2 * N - 1; ++j) {
      auto F = f_block(j);
      Rational v = to_rational(1 / sqrt(Real(j - N + 1)));
      x.append({F.min(), F.max(), alternating ? Pattern::Alternating : Pattern::Constant, v, {}});
    }
    return x;
  }

  BlockVector a_block(std::size_t i) const {
    if (i == 0 || i > extra_.size()) throw Error(ErrorKind::InvalidArgument, "no set A_" + std::to_string(i));
    return BlockVector::indicator(extra_[i - 1].set);
  }

 private:
  struct Extra {
    FiniteSet set;
    std::shared_ptr<RepeatedAverage> average;
  };

  std::vector<BlockTerm> terms(const BlockVector& x) const { return block_terms(*blocks_, x); }

  Ordinal alpha_;
  std::shared_ptr<Partition> blocks_;
  std::optional<Ordinal> beta_;
  std::vector<Int> m_seq_, n_seq_;
  std::vector<Extra> extra_;
};

}  // namespace schreierlab
