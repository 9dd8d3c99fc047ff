#include "egh/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "egh/errors.hpp"

namespace egh {

namespace {

constexpr double kPi = std::numbers::pi;

ElemKey round_key(const Elem& a, double scale) {
  ElemKey k;
  k.n = a.n;
  for (int i = 0; i < a.n; ++i) k.k[i] = static_cast<std::int64_t>(std::llround(a[i] * scale));
  return k;
}

long long pmod(long long v, long long n) {
  long long r = v % n;
  return r < 0 ? r + n : r;
}

}  // namespace

double wrap_angle(double t) {
  double r = std::remainder(t, 2 * kPi);  // in [-pi, pi]
  if (r <= -kPi) r += 2 * kPi;
  return r;
}

Elem::Elem(std::initializer_list<double> xs) {
  if (xs.size() > c.size()) throw StructuralError("element has too many coordinates");
  n = static_cast<int>(xs.size());
  std::copy(xs.begin(), xs.end(), c.begin());
}

Elem Elem::of_size(int n) {
  Elem e;
  e.n = n;
  return e;
}

bool ElemKey::operator==(const ElemKey& o) const {
  if (n != o.n) return false;
  for (int i = 0; i < n; ++i)
    if (k[i] != o.k[i]) return false;
  return true;
}

size_t ElemKeyHash::operator()(const ElemKey& k) const noexcept {
  size_t h = static_cast<size_t>(k.n);
  for (int i = 0; i < k.n; ++i)
    h ^= std::hash<std::int64_t>{}(k.k[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

ElemKey Group::key(const Elem& a) const { return round_key(a, 1e9); }

Elem Group::power(const Elem& a, long long k) const {
  Elem base = k < 0 ? inv(a) : a;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : k;
  Elem out = identity();
  while (e) {
    if (e & 1) out = mul(out, base);
    base = mul(base, base);
    e >>= 1;
  }
  return out;
}

Elem Group::exp(const Eigen::VectorXd&) const {
  throw DomainError(name() + " has no exponential chart");
}

std::optional<Eigen::VectorXd> Group::log(const Elem&) const { return std::nullopt; }

std::string Group::format(const Elem& a) const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < a.n; ++i) os << (i ? "," : "") << a[i];
  os << ")";
  return os.str();
}

// ---- Lattice ----

Lattice::Lattice(int k, bool continuous) : k_(k), continuous_(continuous) {
  if (k < 1 || k > 9) throw DomainError("lattice dimension must be in 1..9");
}

std::string Lattice::name() const {
  return (continuous_ ? "R^" : "Z^") + std::to_string(k_);
}

Elem Lattice::mul(const Elem& a, const Elem& b) const {
  Elem r = Elem::of_size(k_);
  for (int i = 0; i < k_; ++i) r[i] = a[i] + b[i];
  return r;
}

Elem Lattice::inv(const Elem& a) const {
  Elem r = Elem::of_size(k_);
  for (int i = 0; i < k_; ++i) r[i] = -a[i];
  return r;
}

double Lattice::dist(const Elem& a, const Elem& b) const {
  double s = 0;
  for (int i = 0; i < k_; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

Elem Lattice::exp(const Eigen::VectorXd& v) const {
  if (!continuous_) throw DomainError("Z^k has no exponential chart");
  Elem r = Elem::of_size(k_);
  for (int i = 0; i < k_; ++i) r[i] = v(i);
  return r;
}

std::optional<Eigen::VectorXd> Lattice::log(const Elem& a) const {
  if (!continuous_) return std::nullopt;
  Eigen::VectorXd v(k_);
  for (int i = 0; i < k_; ++i) v(i) = a[i];
  return v;
}

// ---- TorusGroup ----

TorusGroup::TorusGroup(std::vector<double> radii) : radii_(std::move(radii)) {
  if (radii_.empty() || radii_.size() > 9) throw DomainError("torus needs 1..9 factors");
}

std::string TorusGroup::name() const { return "T^" + std::to_string(radii_.size()); }

Elem TorusGroup::mul(const Elem& a, const Elem& b) const {
  Elem r = identity();
  for (int i = 0; i < r.n; ++i) r[i] = wrap_angle(a[i] + b[i]);
  return r;
}

Elem TorusGroup::inv(const Elem& a) const {
  Elem r = identity();
  for (int i = 0; i < r.n; ++i) r[i] = wrap_angle(-a[i]);
  return r;
}

double TorusGroup::dist(const Elem& a, const Elem& b) const {
  double s = 0;
  for (size_t i = 0; i < radii_.size(); ++i) {
    double t = radii_[i] * wrap_angle(a[i] - b[i]);
    s += t * t;
  }
  return std::sqrt(s);
}

Elem TorusGroup::exp(const Eigen::VectorXd& v) const {
  Elem r = identity();
  for (int i = 0; i < r.n; ++i) r[i] = wrap_angle(v(i));
  return r;
}

std::optional<Eigen::VectorXd> TorusGroup::log(const Elem& a) const {
  Eigen::VectorXd v(a.n);
  for (int i = 0; i < a.n; ++i) {
    double t = wrap_angle(a[i]);
    if (std::abs(t - kPi) < 1e-12) return std::nullopt;
    v(i) = t;
  }
  return v;
}

Elem TorusGroup::from_angles(std::initializer_list<double> a) const {
  Elem r(a);
  for (int i = 0; i < r.n; ++i) r[i] = wrap_angle(r[i]);
  return r;
}

// ---- TorusGrid ----

TorusGrid::TorusGrid(std::vector<int> counts, std::vector<double> radii)
    : counts_(std::move(counts)), radii_(std::move(radii)) {
  if (counts_.empty() || counts_.size() != radii_.size() || counts_.size() > 9)
    throw DomainError("torus grid needs matching counts and radii");
  for (int c : counts_)
    if (c < 1) throw DomainError("torus grid counts must be positive");
}

std::string TorusGrid::name() const {
  std::string s = "Z";
  for (size_t i = 0; i < counts_.size(); ++i) s += (i ? "xZ" : "") + std::to_string(counts_[i]);
  return s;
}

Elem TorusGrid::mul(const Elem& a, const Elem& b) const {
  Elem r = identity();
  for (int i = 0; i < r.n; ++i)
    r[i] = static_cast<double>(pmod(std::llround(a[i] + b[i]), counts_[i]));
  return r;
}

Elem TorusGrid::inv(const Elem& a) const {
  Elem r = identity();
  for (int i = 0; i < r.n; ++i) r[i] = static_cast<double>(pmod(-std::llround(a[i]), counts_[i]));
  return r;
}

double TorusGrid::angle(const Elem& a, int j) const {
  long long k = pmod(std::llround(a[j]), counts_[j]);
  if (2 * k > counts_[j]) k -= counts_[j];
  return 2 * kPi * static_cast<double>(k) / counts_[j];
}

double TorusGrid::dist(const Elem& a, const Elem& b) const {
  Elem d = mul(a, inv(b));
  double s = 0;
  for (size_t j = 0; j < counts_.size(); ++j) {
    double t = radii_[j] * angle(d, static_cast<int>(j));
    s += t * t;
  }
  return std::sqrt(s);
}

std::optional<std::vector<Elem>> TorusGrid::elements() const {
  std::vector<Elem> out{identity()};
  for (size_t j = 0; j < counts_.size(); ++j) {
    std::vector<Elem> next;
    next.reserve(out.size() * counts_[j]);
    for (const Elem& e : out)
      for (int k = 0; k < counts_[j]; ++k) {
        Elem f = e;
        f[static_cast<int>(j)] = k;
        next.push_back(f);
      }
    out = std::move(next);
  }
  return out;
}

std::optional<long long> TorusGrid::element_order(const Elem& a) const {
  long long ord = 1;
  for (size_t j = 0; j < counts_.size(); ++j) {
    long long k = pmod(std::llround(a[static_cast<int>(j)]), counts_[j]);
    long long o = counts_[j] / std::gcd(k, static_cast<long long>(counts_[j]));
    ord = std::lcm(ord, o);
  }
  return ord;
}

Elem TorusGrid::exp(const Eigen::VectorXd& v) const {
  Elem r = identity();
  for (int j = 0; j < r.n; ++j)
    r[j] = static_cast<double>(pmod(std::llround(v(j) * counts_[j] / (2 * kPi)), counts_[j]));
  return r;
}

std::optional<Eigen::VectorXd> TorusGrid::log(const Elem& a) const {
  Eigen::VectorXd v(a.n);
  for (int j = 0; j < a.n; ++j) {
    long long k = pmod(std::llround(a[j]), counts_[j]);
    if (2 * k == counts_[j]) return std::nullopt;  // angle pi
    v(j) = angle(a, j);
  }
  return v;
}

// ---- SO3 ----

Eigen::Matrix3d SO3Group::matrix(const Elem& a) {
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = a[3 * r + c];
  return m;
}

Elem SO3Group::from_matrix(const Eigen::Matrix3d& m) {
  Elem e = Elem::of_size(9);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) e[3 * r + c] = m(r, c);
  return e;
}

Elem SO3Group::identity() const { return from_matrix(Eigen::Matrix3d::Identity()); }

Elem SO3Group::mul(const Elem& a, const Elem& b) const {
  return from_matrix(matrix(a) * matrix(b));
}

Elem SO3Group::inv(const Elem& a) const { return from_matrix(matrix(a).transpose()); }

double SO3Group::angle(const Elem& a) {
  double c = (matrix(a).trace() - 1.0) / 2.0;
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double SO3Group::dist(const Elem& a, const Elem& b) const {
  return angle(from_matrix(matrix(a).transpose() * matrix(b)));
}

ElemKey SO3Group::key(const Elem& a) const { return round_key(a, 1e7); }

Elem SO3Group::exp(const Eigen::VectorXd& v) const {
  Eigen::Vector3d w = v.head<3>();
  double t = w.norm();
  if (t < 1e-15) return identity();
  return from_matrix(Eigen::AngleAxisd(t, w / t).toRotationMatrix());
}

std::optional<Eigen::VectorXd> SO3Group::log(const Elem& a) const {
  double t = angle(a);
  if (t > kPi - 1e-9) return std::nullopt;  // outside the injectivity ball
  Eigen::VectorXd v = Eigen::VectorXd::Zero(3);
  if (t < 1e-15) return v;
  Eigen::Matrix3d m = matrix(a);
  Eigen::Vector3d axis(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
  v = axis * (t / (2 * std::sin(t)));
  return v;
}

// ---- CyclicGroup ----

CyclicGroup::CyclicGroup(long long modulus, Metric metric, double scale, int prime)
    : n_(modulus), metric_(metric), scale_(scale), prime_(prime) {
  if (n_ < 1) throw DomainError("cyclic modulus must be positive");
  if (metric_ == Metric::PAdic && prime_ < 2) throw DomainError("p-adic metric needs p >= 2");
}

std::string CyclicGroup::name() const { return "Z/" + std::to_string(n_); }

long long CyclicGroup::rep(const Elem& a) const { return pmod(std::llround(a[0]), n_); }

long long CyclicGroup::signed_rep(const Elem& a) const {
  long long k = rep(a);
  return 2 * k > n_ ? k - n_ : k;
}

Elem CyclicGroup::mul(const Elem& a, const Elem& b) const {
  return Elem{static_cast<double>(pmod(rep(a) + rep(b), n_))};
}

Elem CyclicGroup::inv(const Elem& a) const {
  return Elem{static_cast<double>(pmod(-rep(a), n_))};
}

double CyclicGroup::dist(const Elem& a, const Elem& b) const {
  long long d = pmod(rep(a) - rep(b), n_);
  if (metric_ == Metric::Arc) {
    long long k = std::min(d, n_ - d);
    return scale_ * 2 * kPi * static_cast<double>(k) / static_cast<double>(n_);
  }
  if (d == 0) return 0.0;
  int v = 0;
  while (d % prime_ == 0) {
    d /= prime_;
    ++v;
  }
  return scale_ * std::pow(static_cast<double>(prime_), -v);
}

std::optional<std::vector<Elem>> CyclicGroup::elements() const {
  std::vector<Elem> out;
  out.reserve(n_);
  for (long long k = 0; k < n_; ++k) out.push_back(Elem{static_cast<double>(k)});
  return out;
}

std::optional<long long> CyclicGroup::element_order(const Elem& a) const {
  return n_ / std::gcd(rep(a), n_);
}

// ---- HeisenbergMod ----

HeisenbergMod::HeisenbergMod(int p, bool abelian, double scale)
    : p_(p), abelian_(abelian), scale_(scale) {
  if (p < 3 || p % 2 == 0) throw DomainError("Heisenberg group needs an odd modulus");
  half_ = (p_ + 1) / 2;
}

std::string HeisenbergMod::name() const {
  return (abelian_ ? "Z" + std::to_string(p_) + "^3" : "Heis(" + std::to_string(p_) + ")");
}

long long HeisenbergMod::mod(long long v) const { return pmod(v, p_); }

Elem HeisenbergMod::mul(const Elem& a, const Elem& b) const {
  long long a1 = std::llround(a[0]), b1 = std::llround(a[1]), z1 = std::llround(a[2]);
  long long a2 = std::llround(b[0]), b2 = std::llround(b[1]), z2 = std::llround(b[2]);
  long long z = z1 + z2;
  if (!abelian_) z += mod(mod(a1 * b2 - a2 * b1) * half_);
  return Elem{static_cast<double>(mod(a1 + a2)), static_cast<double>(mod(b1 + b2)),
              static_cast<double>(mod(z))};
}

Elem HeisenbergMod::inv(const Elem& a) const {
  return Elem{static_cast<double>(mod(-std::llround(a[0]))),
              static_cast<double>(mod(-std::llround(a[1]))),
              static_cast<double>(mod(-std::llround(a[2])))};
}

double HeisenbergMod::dist(const Elem& a, const Elem& b) const {
  const Elem q = mul(inv(a), b);
  double s = 0;
  for (int i = 0; i < 3; ++i) {
    long long d = mod(std::llround(q[i]));
    long long k = std::min<long long>(d, p_ - d);
    s += static_cast<double>(k * k);
  }
  return scale_ * std::sqrt(s);
}

std::optional<std::vector<Elem>> HeisenbergMod::elements() const {
  std::vector<Elem> out;
  out.reserve(static_cast<size_t>(p_) * p_ * p_);
  for (int a = 0; a < p_; ++a)
    for (int b = 0; b < p_; ++b)
      for (int z = 0; z < p_; ++z)
        out.push_back(Elem{static_cast<double>(a), static_cast<double>(b), static_cast<double>(z)});
  return out;
}

// ---- PermGroupView ----

PermGroupView::PermGroupView(std::shared_ptr<const IsometryGroup> g) : g_(std::move(g)) {
  const int n = g_->order();
  dp_.assign(static_cast<size_t>(n) * n, 0.0);
  // Left invariance: d_p(a,b) = d_p(e, a^{-1} b).
  std::vector<double> from_e(n);
  for (int b = 0; b < n; ++b) from_e[b] = dp_distance(*g_, 0, b);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) dp_[static_cast<size_t>(a) * n + b] = from_e[g_->mul(g_->inv(a), b)];
}

Elem PermGroupView::mul(const Elem& a, const Elem& b) const {
  return of(g_->mul(index(a), index(b)));
}

Elem PermGroupView::inv(const Elem& a) const { return of(g_->inv(index(a))); }

double PermGroupView::dist(const Elem& a, const Elem& b) const {
  return dp_[static_cast<size_t>(index(a)) * g_->order() + index(b)];
}

std::optional<std::vector<Elem>> PermGroupView::elements() const {
  std::vector<Elem> out;
  for (int i = 0; i < g_->order(); ++i) out.push_back(of(i));
  return out;
}

std::optional<long long> PermGroupView::element_order(const Elem& a) const {
  return g_->element_order(index(a));
}

std::string PermGroupView::format(const Elem& a) const {
  return cycle_string(g_->space(), g_->element(index(a)));
}

// ---- products ----

std::vector<Elem> product_set(const Group& g, const std::vector<Elem>& a, int n, size_t cap) {
  if (n < 1) throw DomainError("product_set needs n >= 1");
  std::vector<Elem> cur;
  std::unordered_set<ElemKey, ElemKeyHash> seen;
  for (const Elem& x : a)
    if (seen.insert(g.key(x)).second) cur.push_back(x);
  for (int step = 1; step < n; ++step) {
    std::vector<Elem> next;
    seen.clear();
    for (const Elem& x : cur)
      for (const Elem& y : a) {
        Elem z = g.mul(x, y);
        if (seen.insert(g.key(z)).second) {
          next.push_back(z);
          if (next.size() > cap) throw ResourceError("product set exceeds cap");
        }
      }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace egh
