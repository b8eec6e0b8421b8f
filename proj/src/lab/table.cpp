#include "table.hpp"

#include <algorithm>
#include <map>

namespace bcinv::lab {

FiniteRing tabulate(const RingDescriptor& d, std::size_t cap) {
  require(cap <= kMaxLabRingSize, ErrorKind::CapExceeded,
          "cap " + std::to_string(cap) + " exceeds the hard limit " + std::to_string(kMaxLabRingSize));
  switch (d.kind) {
    case RingDescriptor::Kind::Modular: return FiniteRing::tabulate(make_modular(d), short_name(d), cap);
    case RingDescriptor::Kind::PrimeMatrix: {
      const auto m = make_prime_matrix(d);
      require(m.enumerable(), ErrorKind::CapExceeded, short_name(d) + " is too large to enumerate");
      return FiniteRing::tabulate(m, short_name(d), cap);
    }
    default: fail(ErrorKind::MethodUnavailable, "the lab needs a finite ring, got " + to_string(d));
  }
}

Table::Table(const FiniteRing& r) : r_(r), n_(static_cast<Id>(r.size())) {
  require(n_ <= kMaxLabRingSize, ErrorKind::CapExceeded, "ring too large for mask tables");
  zero_ = r.zero().id;
  one_ = r.one().id;
  mul_.resize(n_ * n_);
  add_.resize(n_ * n_);
  neg_.resize(n_);
  for (Id x = 0; x < n_; ++x) {
    neg_[x] = r.neg(Element{x}).id;
    for (Id y = 0; y < n_; ++y) {
      mul_[x * n_ + y] = r.mul(Element{x}, Element{y}).id;
      add_[x * n_ + y] = r.add(Element{x}, Element{y}).id;
    }
  }
  ri_.assign(n_, 0);
  li_.assign(n_, 0);
  rk_.assign(n_, 0);
  lk_.assign(n_, 0);
  inner_.assign(n_, 0);
  unit_inv_.assign(n_, kNone);
  for (Id x = 0; x < n_; ++x)
    for (Id y = 0; y < n_; ++y) {
      ri_[x] |= bit(mul(x, y));
      li_[x] |= bit(mul(y, x));
      if (mul(x, y) == zero_) rk_[x] |= bit(y);
      if (mul(y, x) == zero_) lk_[x] |= bit(y);
      if (mul(x, y, x) == x) inner_[x] |= bit(y);
      if (mul(x, y) == one_ && mul(y, x) == one_) unit_inv_[x] = static_cast<int>(y);
    }

  // y ∈ bRy  ⟺  s·y = y for some s ∈ bR;  y ∈ yRc  ⟺  y·t = y for some t ∈ Rc.
  std::vector<char> in_bry(n_ * n_, 0), in_yrc(n_ * n_, 0);
  for (Id b = 0; b < n_; ++b)
    for (Id y = 0; y < n_; ++y)
      for (Id s = 0; s < n_; ++s) {
        if ((ri_[b] & bit(s)) && mul(s, y) == y) in_bry[b * n_ + y] = 1;
        if ((li_[b] & bit(s)) && mul(y, s) == y) in_yrc[y * n_ + b] = 1;
      }
  bc_.assign(n_ * n_ * n_, kNone);
  bc_count_.assign(n_ * n_ * n_, 0);
  for (Id a = 0; a < n_; ++a)
    for (Id b = 0; b < n_; ++b)
      for (Id c = 0; c < n_; ++c)
        for (Id y = 0; y < n_; ++y) {
          if (!in_bry[b * n_ + y] || !in_yrc[y * n_ + c]) continue;
          if (mul(y, a, b) != b || mul(c, a, y) != c) continue;
          const auto k = (a * n_ + b) * n_ + c;
          if (bc_[k] == kNone) bc_[k] = static_cast<int>(y);
          ++bc_count_[k];
        }
}

Mask Table::sandwich(Id x, Id y) const {
  Mask m = 0;
  for (Id s = 0; s < n_; ++s) m |= bit(mul(x, s, y));
  return m;
}

Mask Table::sumset(Mask a, Mask b) const {
  Mask m = 0;
  for (Id s = 0; s < n_; ++s)
    if (a & bit(s))
      for (Id t = 0; t < n_; ++t)
        if (b & bit(t)) m |= bit(add(s, t));
  return m;
}

std::vector<std::pair<Id, Id>> Table::corner_units(Id e) const {
  std::vector<std::pair<Id, Id>> out;
  const Mask corner = sandwich(e, e);
  for (Id u = 0; u < n_; ++u) {
    if (!(corner & bit(u))) continue;
    for (Id w = 0; w < n_; ++w)
      if ((corner & bit(w)) && mul(u, w) == e && mul(w, u) == e) {
        out.emplace_back(u, w);
        break;
      }
  }
  return out;
}

namespace {

std::vector<FrameClass> classes(const Table& t, bool left) {
  std::vector<FrameClass> out;
  for (Id x = 0; x < t.size(); ++x) {
    std::map<Id, std::uint64_t> by_idem;
    for (Id g = 0; g < t.size(); ++g)
      if (t.inner(x) & bit(g)) ++by_idem[left ? t.mul(x, g) : t.mul(g, x)];
    for (const auto& [e, k] : by_idem) out.push_back({x, e, k});
  }
  return out;
}

}  // namespace

std::vector<FrameClass> left_classes(const Table& t) { return classes(t, true); }
std::vector<FrameClass> right_classes(const Table& t) { return classes(t, false); }

void Accum::refute(const Table& t, std::vector<std::pair<std::string, Id>> slots, std::string statement) {
  ++cex_total;
  Counterexample c;
  for (const auto& [name, id] : slots) {
    c.key.push_back(id);
    c.tuple.emplace_back(name, t.label(id));
  }
  c.statement = std::move(statement);
  cex.push_back(std::move(c));
  // Trim occasionally; the final ordering is applied in finish().
  if (cex.size() > 4 * keep + 64) {
    std::sort(cex.begin(), cex.end(), [](const auto& x, const auto& y) { return x.key < y.key; });
    cex.resize(keep);
  }
}

void Accum::merge(Accum&& o) {
  examined += o.examined;
  admissible += o.admissible;
  for (auto& [k, v] : o.statements) {
    statements[k].evaluated += v.evaluated;
    statements[k].held += v.held;
  }
  for (auto& [k, v] : o.counts) counts[k] += v;
  for (auto& c : o.cex) cex.push_back(std::move(c));
  cex_total += o.cex_total;
}

Accum sweep(std::size_t count, unsigned threads, std::size_t keep,
            const std::function<void(std::size_t, Accum&)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::vector<Accum> parts(count);
  for (auto& p : parts) p.keep = keep;
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < count; i += threads) body(i, parts[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& th : pool) th.join();
  Accum total;
  total.keep = keep;
  for (auto& p : parts) total.merge(std::move(p));
  return total;
}

LabReport finish(const Table& t, std::string suite, std::vector<std::string> theorems, std::uint64_t space,
                 Accum&& acc, std::size_t keep) {
  LabReport rep;
  rep.ring = t.ring().name();
  rep.suite = std::move(suite);
  rep.theorems = std::move(theorems);
  rep.space = space;
  rep.examined = acc.examined;
  rep.admissible = acc.admissible;
  rep.statements = std::move(acc.statements);
  rep.counts = std::move(acc.counts);
  std::sort(acc.cex.begin(), acc.cex.end(), [](const auto& x, const auto& y) {
    return x.key != y.key ? x.key < y.key : x.statement < y.statement;
  });
  if (acc.cex.size() > keep) acc.cex.resize(keep);
  rep.counterexamples = std::move(acc.cex);
  rep.counterexample_total = acc.cex_total;
  return rep;
}

void check_budget(const Table& t, std::uint64_t estimate, const LabConfig& cfg, const std::string& suite) {
  require(estimate <= cfg.op_budget, ErrorKind::CapExceeded,
          suite + " on " + t.ring().name() + " needs about " + std::to_string(estimate) +
              " operations, budget is " + std::to_string(cfg.op_budget));
}

}  // namespace bcinv::lab
