#include "nilcomp/nilseq.hpp"

#include <cmath>
#include <random>

#include "nilcomp/error.hpp"

namespace nilcomp {

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
  return Rational(num(rng)) / Rational(den(rng));
}

}  // namespace

MalcevReduction malcev_reduce(const FilteredLattice& fl, const UnipotentMatrix& g) {
  UnipotentMatrix rep = fl.project(g);
  UnipotentMatrix undo = UnipotentMatrix::identity(fl.dim());
  for (const auto& p : fl.positions()) {
    const Rational s(fl.denominator(p));
    const Integer whole = floor_of(rep(p.row, p.col) * s);
    if (whole == 0) continue;
    const auto step = UnipotentMatrix::elementary(fl.dim(), p.row, p.col, -Rational(whole) / s);
    rep = fl.project(rep * step);
    undo = undo * step;
  }
  MalcevReduction out{fl.coordinates(rep), rep, fl.project(undo.inverse())};
  return out;
}

FrequencySpec::FrequencySpec(FilteredLattice lattice, std::vector<Integer> frequencies)
    : lattice_(std::move(lattice)) {
  const std::size_t r = lattice_.dim();
  if (frequencies.size() != r * r) fail(ErrorKind::DimMismatch, "frequency matrix must have dim*dim entries");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (frequencies[i * r + j] != 0 && !lattice_.active(i, j))
        fail(ErrorKind::InvalidArgument, "frequency at inactive position " + to_string(Position{i, j}));
  bool exact = true;
  for (const auto& p : lattice_.positions()) {
    freq_.push_back(frequencies[p.row * r + p.col]);
    const int l = lattice_.level(p);
    if (freq_.back() != 0 && l != 1 && l != lattice_.degree()) exact = false;
  }
  mode_ = exact ? Mode::Exact : Mode::Sampled;
}

Integer FrequencySpec::total_frequency() const {
  Integer s = 0;
  for (const auto& m : freq_) s += abs(m);
  return s;
}

Complex FrequencySpec::operator()(const std::vector<Rational>& coords) const {
  if (coords.size() != freq_.size()) fail(ErrorKind::DimMismatch, "coordinate count mismatch");
  Rational t = 0;
  const auto& pos = lattice_.positions();
  for (std::size_t i = 0; i < freq_.size(); ++i)
    if (freq_[i] != 0) t += Rational(freq_[i] * lattice_.denominator(pos[i])) * coords[i];
  return phase(t);
}

Complex FrequencySpec::at(const UnipotentMatrix& g) const { return (*this)(malcev_reduce(lattice_, g).coords); }

void FrequencySpec::check_invariance(std::uint64_t seed, std::size_t samples, double tol) const {
  if (mode_ == Mode::Exact) return;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> small(-3, 3);
  const auto& pos = lattice_.positions();
  for (std::size_t n = 0; n < samples; ++n) {
    std::vector<Rational> gc, yc;
    for (const auto& p : pos) {
      gc.push_back(random_rational(rng));
      yc.push_back(Rational(small(rng)) / Rational(lattice_.denominator(p)));
    }
    const auto g = lattice_.from_coordinates(gc);
    const auto gamma = lattice_.from_coordinates(yc);
    if (std::abs(at(g) - at(g * gamma)) > tol)
      fail(ErrorKind::NotInvariant, "F differs on g and g*gamma for g = " + to_string(g));
  }
}

ProjectedNilsequence project(const AbelianHom& tau, const PolyMap& g, const FrequencySpec& frequency) {
  const FiniteAbelianGroup& src = tau.source();
  if (g.arity() != src.num_factors())
    fail(ErrorKind::ArityMismatch, "map arity " + std::to_string(g.arity()) + " differs from the source factor count " +
                                       std::to_string(src.num_factors()));
  if (!(g.ambient() == frequency.lattice())) fail(ErrorKind::GroupMismatch, "F lives on a different lattice");
  if (!tau.is_surjective()) fail(ErrorKind::NonSurjective, "tau is not surjective");
  std::vector<Integer> periods;
  for (auto d : src.moduli()) periods.push_back(Integer(static_cast<long>(d)));
  if (g.arity() > 0 && !is_periodic_mod_lattice(g, periods))
    fail(ErrorKind::PeriodMismatch, "map is not periodic with the source moduli");
  frequency.check_invariance();

  const FiniteAbelianGroup& dst = tau.target();
  std::vector<Complex> sums(dst.order(), Complex(0, 0));
  std::vector<std::size_t> counts(dst.order(), 0);
  for (std::size_t i = 0; i < src.order(); ++i) {
    const GroupElement y = src.element_at(i);
    Point x;
    for (auto c : y.coords) x.push_back(Integer(static_cast<long>(c)));
    const std::size_t target = dst.index_of(tau.apply(y));
    sums[target] += frequency.at(g.eval(x));
    ++counts[target];
  }
  for (std::size_t i = 0; i < sums.size(); ++i) sums[i] /= static_cast<double>(counts[i]);
  ComplexTable table(dst, std::move(sums));
  const bool rank_preserving = src.rank() == dst.rank();
  return {tau, g, frequency, std::move(table), rank_preserving};
}

ObstructionReport obstruction_report(const ComplexTable& f, const ProjectedNilsequence& phi, unsigned k) {
  if (!(f.group() == phi.table.group())) fail(ErrorKind::GroupMismatch, "f and phi live on different groups");
  ObstructionReport r;
  r.k = k;
  r.delta = std::abs(correlate(f, phi.table));
  r.gowers = gowers_norm(f, k + 1);
  r.gowers_pullback = gowers_norm(f.pullback(phi.tau), k + 1);
  r.pullback_identity = std::abs(r.gowers - r.gowers_pullback) <= 1e-9;
  r.dim = phi.g.ambient().dim();
  r.degree = phi.g.degree();
  for (const auto& c : phi.g.coefficients())
    if (c.max_denominator() > r.max_denominator) r.max_denominator = c.max_denominator();
  r.total_frequency = phi.frequency.total_frequency();
  r.rank_preserving = phi.rank_preserving;
  return r;
}

}  // namespace nilcomp
