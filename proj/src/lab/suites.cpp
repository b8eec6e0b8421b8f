#include <array>

#include "table.hpp"

namespace bcinv::lab {

namespace {

std::uint64_t power(std::uint64_t n, int k) {
  std::uint64_t out = 1;
  for (int i = 0; i < k; ++i) out *= n;
  return out;
}

void check_cap(const FiniteRing& r, const LabConfig& cfg) {
  require(r.size() <= cfg.cap, ErrorKind::CapExceeded,
          r.name() + " has " + std::to_string(r.size()) + " elements, cap is " + std::to_string(cfg.cap));
}

// Statements about an outer inverse y of a, in terms of the four ideals of
// y, b and c. Index 0 is "y is the (b,c)-inverse"; 1-3 need nothing of b, c;
// 4-15 assume b and c regular.
constexpr std::array<const char*, 16> kStatementNames = {
    "S01 y = a^-(b,c)",
    "S02 Ry=Rc, yR<=bR, lk(y)<=lk(b)",
    "S03 yR=bR, Ry<=Rc, rk(y)<=rk(c)",
    "S04 Ry<=Rc, yR<=bR, lk(y)<=lk(b), rk(y)<=rk(c)",
    "S05 Ry=Rc, bR<=yR, lk(b)<=lk(y)",
    "S06 yR=bR, Rc<=Ry, rk(c)<=rk(y)",
    "S07 Ry=Rc, lk(y)=lk(b)",
    "S08 Ry<=Rc, bR<=yR, rk(y)<=rk(c), lk(b)<=lk(y)",
    "S09 Rc<=Ry, yR<=bR, lk(y)<=lk(b), rk(c)<=rk(y)",
    "S10 Rc<=Ry, bR<=yR, rk(c)<=rk(y), lk(b)<=lk(y)",
    "S11 yR=bR, rk(y)=rk(c)",
    "S12 Ry<=Rc, rk(y)<=rk(c), lk(y)=lk(b)",
    "S13 Rc<=Ry, rk(c)<=rk(y), lk(y)=lk(b)",
    "S14 bR<=yR, lk(b)<=lk(y), rk(y)=rk(c)",
    "S15 yR<=bR, lk(y)<=lk(b), rk(y)=rk(c)",
    "S16 rk(y)=rk(c), lk(y)=lk(b)",
};

std::array<bool, 16> statements(const Table& t, Id a, Id b, Id c, Id y) {
  const Mask RY = t.left_image(y), RC = t.left_image(c);
  const Mask YR = t.right_image(y), BR = t.right_image(b);
  const Mask LY = t.left_kernel(y), LB = t.left_kernel(b);
  const Mask KY = t.right_kernel(y), KC = t.right_kernel(c);
  std::array<bool, 16> s{};
  s[0] = t.bc(a, b, c) == static_cast<int>(y);
  s[1] = RY == RC && subset(YR, BR) && subset(LY, LB);
  s[2] = YR == BR && subset(RY, RC) && subset(KY, KC);
  s[3] = subset(RY, RC) && subset(YR, BR) && subset(LY, LB) && subset(KY, KC);
  s[4] = RY == RC && subset(BR, YR) && subset(LB, LY);
  s[5] = YR == BR && subset(RC, RY) && subset(KC, KY);
  s[6] = RY == RC && LY == LB;
  s[7] = subset(RY, RC) && subset(BR, YR) && subset(KY, KC) && subset(LB, LY);
  s[8] = subset(RC, RY) && subset(YR, BR) && subset(LY, LB) && subset(KC, KY);
  s[9] = subset(RC, RY) && subset(BR, YR) && subset(KC, KY) && subset(LB, LY);
  s[10] = YR == BR && KY == KC;
  s[11] = subset(RY, RC) && subset(KY, KC) && LY == LB;
  s[12] = subset(RC, RY) && subset(KC, KY) && LY == LB;
  s[13] = subset(BR, YR) && subset(LB, LY) && KY == KC;
  s[14] = subset(YR, BR) && subset(LY, LB) && KY == KC;
  s[15] = KY == KC && LY == LB;
  return s;
}

}  // namespace

LabReport verify_equivalence_suite(const FiniteRing& r, const LabConfig& cfg) {
  check_cap(r, cfg);
  const Table t(r);
  const Id n = t.size();
  check_budget(t, power(n, 4) * 16, cfg, "equivalences");
  auto acc = sweep(n, cfg.threads, cfg.max_listed, [&](std::size_t ai, Accum& acc) {
    const Id a = static_cast<Id>(ai);
    for (Id b = 0; b < n; ++b)
      for (Id c = 0; c < n; ++c) {
        const bool reg = t.regular(b) && t.regular(c);
        if (t.bc_count(a, b, c) > 1) acc.refute(t, {{"a", a}, {"b", b}, {"c", c}}, "uniqueness of a^-(b,c)");
        acc.check("uniqueness of a^-(b,c)", t.bc_count(a, b, c) <= 1);
        int hybrid = kNone, annihilator = kNone, n_hybrid = 0, n_annihilator = 0;
        for (Id y = 0; y < n; ++y) {
          ++acc.examined;
          if (t.mul(y, a, y) != y) continue;
          ++acc.admissible;
          const auto s = statements(t, a, b, c, y);
          const std::size_t upto = reg ? 16 : 4;
          for (std::size_t k = 0; k < upto; ++k) acc.check(kStatementNames[k], s[k]);
          for (std::size_t k = 1; k < upto; ++k)
            if (s[k] != s[0]) {
              acc.refute(t, {{"a", a}, {"b", b}, {"c", c}, {"y", y}},
                         std::string(kStatementNames[0]) + " <> " + kStatementNames[k]);
              break;
            }
          if (s[10]) {
            hybrid = static_cast<int>(y);
            ++n_hybrid;
          }
          if (s[15]) {
            annihilator = static_cast<int>(y);
            ++n_annihilator;
          }
        }
        if (!reg) continue;
        // Hybrid and annihilator inverses: unique when present, and equal to
        // the (b,c)-inverse exactly when any of the three exists.
        const int y = t.bc(a, b, c);
        const bool ok = n_hybrid <= 1 && n_annihilator <= 1 && hybrid == y && annihilator == y;
        acc.check("hybrid = annihilator = (b,c)-inverse", ok);
        if (!ok) acc.refute(t, {{"a", a}, {"b", b}, {"c", c}}, "hybrid = annihilator = (b,c)-inverse");
      }
  });
  return finish(t, "equivalences", {"ideal characterisations of the (b,c)-inverse", "coincidence of inverses"},
                power(n, 4), std::move(acc), cfg.max_listed);
}

LabReport verify_set_decomposition(const FiniteRing& r, const LabConfig& cfg) {
  check_cap(r, cfg);
  const Table t(r);
  const Id n = t.size();
  const auto left = left_classes(t);
  const auto right = right_classes(t);
  check_budget(t, left.size() * right.size() * power(n, 3) * 4, cfg, "sets");

  auto acc = sweep(left.size() * right.size(), cfg.threads, cfg.max_listed, [&](std::size_t idx, Accum& acc) {
    const auto& L = left[idx / right.size()];
    const auto& Rt = right[idx % right.size()];
    const Id b = L.elem, p = L.idem, c = Rt.elem, q = Rt.idem;
    const std::uint64_t weight = L.choices * Rt.choices;
    acc.admissible += weight;
    acc.counts["frame classes"] += 1;
    const Id pc = t.comp(p), qc = t.comp(q);
    auto slots = [&](std::vector<std::pair<std::string, Id>> extra) {
      std::vector<std::pair<std::string, Id>> s{{"b", b}, {"c", c}, {"p", p}, {"q", q}};
      s.insert(s.end(), extra.begin(), extra.end());
      return s;
    };
    auto record = [&](const std::string& name, bool held, std::vector<std::pair<std::string, Id>> extra) {
      acc.check(name, held, weight);
      if (!held) acc.refute(t, slots(std::move(extra)), name);
    };

    Mask invertible = 0;
    for (Id a = 0; a < n; ++a)
      if (t.bc(a, b, c) != kNone) invertible |= bit(a);

    // Corner units: x ∈ qRp with z ∈ bRc, z·x = p, x·z = q.
    const Mask qRp = t.sandwich(q, p), bRc = t.sandwich(b, c);
    Mask units = 0;
    std::vector<int> witness(n, kNone);
    for (Id x = 0; x < n; ++x) {
      if (!(qRp & bit(x))) continue;
      for (Id z = 0; z < n; ++z)
        if ((bRc & bit(z)) && t.mul(z, x) == p && t.mul(x, z) == q) {
          units |= bit(x);
          witness[x] = static_cast<int>(z);
          break;
        }
    }
    const Mask rest = t.sumset(t.sandwich(q, pc), t.sandwich(qc, t.one()));
    const Mask rest_dual = t.sumset(t.sandwich(p, qc), t.sandwich(pc, t.one()));

    record("invertible set = corner units + complement", t.sumset(units, rest) == invertible, {});

    for (Id x = 0; x < n; ++x) {
      if (!(units & bit(x))) continue;
      for (Id m = 0; m < n; ++m) {
        if (!(rest & bit(m))) continue;
        const int y = t.bc(t.add(x, m), b, c);
        record("(x+m)^-(b,c) = z in bRc", y == witness[x] && (bRc & bit(static_cast<Id>(y))), {{"x", x}, {"m", m}});
      }
    }

    const auto pu = t.corner_units(p), qu = t.corner_units(q);
    Mask scaled = 0;
    for (const auto& [v, vi] : qu)
      for (Id x = 0; x < n; ++x) {
        if (!(units & bit(x))) continue;
        for (const auto& [u, ui] : pu) {
          const Id vxu = t.mul(v, x, u);
          scaled |= bit(vxu);
          const Id expected = t.mul(ui, static_cast<Id>(witness[x]), vi);
          for (Id m = 0; m < n; ++m) {
            if (!(rest & bit(m))) continue;
            record("(vxu+m)^-(b,c) = u'.z.v'", t.bc(t.add(vxu, m), b, c) == static_cast<int>(expected),
                   {{"x", x}, {"u", u}, {"v", v}, {"m", m}});
          }
        }
      }
    record("units(qRq).U.units(pRp) = U", scaled == units, {});

    for (Id a = 0; a < n; ++a) {
      ++acc.examined;
      const int y = t.bc(a, b, c);
      const bool exists = y != kNone;

      // Split form: a = u + v with u a corner unit and q·v·p = 0.
      bool split = false;
      for (Id u = 0; u < n && !split; ++u)
        if ((units & bit(u)) && t.mul(q, t.sub(a, u), p) == t.zero()) split = true;
      record("invertible <=> a = u + v, u corner unit, qvp = 0", split == exists, {{"a", a}});

      // Corner criterion: z ∈ bRc with p = z·q·a·p and q = q·a·p·z.
      const Id qap = t.mul(q, a, p);
      int z_found = kNone;
      for (Id z = 0; z < n && z_found == kNone; ++z)
        if ((bRc & bit(z)) && t.mul(z, qap) == p && t.mul(qap, z) == q) z_found = static_cast<int>(z);
      record("corner criterion", z_found == y, {{"a", a}});

      // Reductions a -> q·a, a·p, q·a·p keep the inverse.
      const bool same = t.bc(t.mul(q, a), b, c) == y && t.bc(t.mul(a, p), b, c) == y && t.bc(qap, b, c) == y;
      record("a, qa, ap, qap share the inverse", same, {{"a", a}});

      if (!exists) continue;
      record("qap is a corner unit", (units & bit(qap)) != 0, {{"a", a}});
      for (Id m = 0; m < n; ++m) {
        if (rest & bit(m)) record("(a+m)^-(b,c) = a^-(b,c)", t.bc(t.add(a, m), b, c) == y, {{"a", a}, {"m", m}});
        if (rest_dual & bit(m))
          record("(y+m)^-(q,p) = qap", t.bc(t.add(static_cast<Id>(y), m), q, p) == static_cast<int>(qap),
                 {{"a", a}, {"m", m}});
      }
    }
  });
  acc.examined = power(n, 4);
  return finish(t, "sets",
                {"decomposition of the (b,c)-invertible set", "split characterisation", "corner scaling",
                 "perturbation invariance", "reductions", "inverse of the inverse", "corner criterion"},
                power(n, 4), std::move(acc), cfg.max_listed);
}

LabReport verify_bott_duffin_section(const FiniteRing& r, const LabConfig& cfg) {
  check_cap(r, cfg);
  const Table t(r);
  const Id n = t.size();
  const auto left = left_classes(t);
  const auto right = right_classes(t);
  check_budget(t, power(n, 4) + left.size() * right.size() * n, cfg, "bottduffin");

  // Idempotent pairs (p, q) and all a with a·p = q·a.
  auto acc = sweep(n, cfg.threads, cfg.max_listed, [&](std::size_t pi, Accum& acc) {
    const Id p = static_cast<Id>(pi);
    for (Id q = 0; q < n; ++q)
      for (Id a = 0; a < n; ++a) {
        ++acc.examined;
        if (!t.idempotent(p) || !t.idempotent(q) || t.mul(a, p) != t.mul(q, a)) continue;
        ++acc.admissible;
        const Id pc = t.comp(p), qc = t.comp(q);
        const int y1 = t.bc(a, p, q), y2 = t.bc(a, pc, qc);
        const bool unit = t.unit(a);
        const std::vector<std::pair<std::string, Id>> slots{{"p", p}, {"q", q}, {"a", a}};
        const bool split_ok =
            unit == (y1 != kNone && y2 != kNone) &&
            (!unit || t.add(static_cast<Id>(y1), static_cast<Id>(y2)) == static_cast<Id>(t.inverse(a)));
        acc.check("a unit <=> both Bott-Duffin parts exist; sum = a^-1", split_ok);
        if (!split_ok) acc.refute(t, slots, "a unit <=> both Bott-Duffin parts exist; sum = a^-1");

        bool block_solution = false, all_inverse = true;
        for (Id z = 0; z < n; ++z) {
          if (t.mul(z, q) != t.mul(p, z)) continue;
          const bool eqs = t.mul(t.mul(p, z, q), t.mul(a, p)) == p &&
                           t.mul(t.mul(pc, z, qc), t.mul(a, pc)) == pc &&
                           t.mul(t.mul(q, a, p), t.mul(z, q)) == q &&
                           t.mul(t.mul(qc, a, pc), t.mul(z, qc)) == qc;
          if (!eqs) continue;
          block_solution = true;
          if (static_cast<int>(z) != t.inverse(a)) all_inverse = false;
        }
        const bool block_ok = block_solution == unit && all_inverse;
        acc.check("block equations <=> a unit; z = a^-1", block_ok);
        if (!block_ok) acc.refute(t, slots, "block equations <=> a unit; z = a^-1");
      }
  });

  // Regular (b, c) with their idempotent classes.
  for (const auto& L : left)
    for (const auto& Rt : right) {
      const Id b = L.elem, p = L.idem, c = Rt.elem, q = Rt.idem;
      const Id pc = t.comp(p), qc = t.comp(q);
      const std::uint64_t w = L.choices * Rt.choices;
      for (Id a = 0; a < n; ++a) {
        const std::vector<std::pair<std::string, Id>> slots{{"b", b}, {"c", c}, {"p", p}, {"q", q}, {"a", a}};
        const bool same = t.bc(a, b, c) == t.bc(a, p, q);
        acc.check("a^-(b,c) = a^-(bg,hc)", same, w);
        if (!same) acc.refute(t, slots, "a^-(b,c) = a^-(bg,hc)");
        if (t.mul(a, p) != t.mul(q, a)) continue;
        const int y = t.bc(a, b, c), y2 = t.bc(a, pc, qc);
        const bool unit = t.unit(a);
        const bool ok = unit == (y != kNone && y2 != kNone) &&
                        (!unit || t.add(static_cast<Id>(y), static_cast<Id>(y2)) == static_cast<Id>(t.inverse(a)));
        acc.check("abg = hca: a unit <=> a^-(b,c), a^-(1-bg,1-hc) exist; sum = a^-1", ok, w);
        if (!ok) acc.refute(t, slots, "abg = hca: a unit <=> a^-(b,c), a^-(1-bg,1-hc) exist; sum = a^-1");
      }
    }
  return finish(t, "bottduffin",
                {"Bott-Duffin splitting of the inverse", "block equations", "(b,c) as Bott-Duffin",
                 "splitting through a frame"},
                power(n, 3), std::move(acc), cfg.max_listed);
}

LabReport verify_reverse_order(const FiniteRing& r, const LabConfig& cfg) {
  check_cap(r, cfg);
  const Table t(r);
  const Id n = t.size();
  const auto left = left_classes(t);
  const auto right = right_classes(t);

  // Chain hypothesis h2·c2 = b1·g1 pairs a left class (b1, p1) with right classes (c2, q2 = p1).
  std::vector<std::vector<std::size_t>> chained(left.size());
  std::uint64_t combos = 0;
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j)
      if (right[j].idem == left[i].idem) chained[i].push_back(j);
  for (const auto& v : chained) combos += v.size();
  check_budget(t, combos * right.size() * left.size() * n * n, cfg, "rol");

  auto acc = sweep(left.size(), cfg.threads, cfg.max_listed, [&](std::size_t i1, Accum& acc) {
    const auto& L1 = left[i1];
    const Id b1 = L1.elem, p1 = L1.idem, p1c = t.comp(p1);
    for (const auto j2 : chained[i1]) {
      const auto& R2 = right[j2];
      const Id c2 = R2.elem;
      for (const auto& R1 : right) {
        const Id c1 = R1.elem, q1 = R1.idem;
        for (const auto& L2 : left) {
          const Id b2 = L2.elem, p2 = L2.idem;
          const std::uint64_t w = L1.choices * R1.choices * L2.choices * R2.choices;
          for (Id a1 = 0; a1 < n; ++a1) {
            const int y1 = t.bc(a1, b1, c1);
            if (y1 == kNone) continue;
            for (Id a2 = 0; a2 < n; ++a2) {
              const int y2 = t.bc(a2, b2, c2);
              if (y2 == kNone) continue;
              acc.admissible += w;
              const bool vanishes = t.mul(t.mul(q1, a1, p1c), t.mul(a2, p2)) == t.zero();
              const int prod = t.bc(t.mul(a1, a2), b2, c1);
              const bool law = prod != kNone && prod == static_cast<int>(t.mul(static_cast<Id>(y2), static_cast<Id>(y1)));
              acc.check("obstruction vanishes <=> reverse order law", vanishes == law, w);
              if (vanishes) acc.counts["law holds"] += w;
              else if (!law) acc.counts["law fails, obstruction nonzero"] += w;
              if (vanishes != law)
                acc.refute(t, {{"a1", a1}, {"b1", b1}, {"c1", c1}, {"p1", p1}, {"q1", q1}, {"a2", a2}, {"b2", b2},
                               {"c2", c2}, {"p2", p2}},
                           "obstruction vanishes <=> reverse order law");
            }
          }
        }
      }
    }
  });
  acc.examined = power(n, 10);
  acc.counts["frame classes"] = combos * right.size() * left.size();
  return finish(t, "rol", {"reverse order law criterion"}, power(n, 10), std::move(acc), cfg.max_listed);
}

Suite parse_suite(const std::string& name) {
  if (name == "equivalences") return Suite::Equivalences;
  if (name == "sets") return Suite::Sets;
  if (name == "bottduffin") return Suite::BottDuffin;
  if (name == "rol") return Suite::ReverseOrder;
  fail(ErrorKind::ParseError, "unknown suite '" + name + "' (equivalences|sets|bottduffin|rol)");
}

std::string to_string(Suite s) {
  switch (s) {
    case Suite::Equivalences: return "equivalences";
    case Suite::Sets: return "sets";
    case Suite::BottDuffin: return "bottduffin";
    case Suite::ReverseOrder: return "rol";
  }
  return "?";
}

LabReport run_suite(const FiniteRing& r, Suite s, const LabConfig& cfg) {
  switch (s) {
    case Suite::Equivalences: return verify_equivalence_suite(r, cfg);
    case Suite::Sets: return verify_set_decomposition(r, cfg);
    case Suite::BottDuffin: return verify_bott_duffin_section(r, cfg);
    case Suite::ReverseOrder: return verify_reverse_order(r, cfg);
  }
  fail(ErrorKind::ParseError, "unknown suite");
}

std::vector<RingDescriptor> default_rings() {
  std::vector<RingDescriptor> out;
  for (const char* name : {"Z4", "Z6", "Z8", "Z9", "Z12", "M2F2"}) out.push_back(parse_ring(name));
  return out;
}

Json to_json(const LabReport& rep) {
  Json j;
  j["ring"] = rep.ring;
  j["suite"] = rep.suite;
  j["claims"] = rep.theorems;
  j["space"] = rep.space;
  j["examined"] = rep.examined;
  j["admissible"] = rep.admissible;
  j["certified"] = rep.certified();
  j["counterexample_total"] = rep.counterexample_total;
  Json table = Json::object();
  for (const auto& [k, v] : rep.statements) table[k] = {{"evaluated", v.evaluated}, {"held", v.held}};
  j["statements"] = table;
  Json counts = Json::object();
  for (const auto& [k, v] : rep.counts) counts[k] = v;
  j["counts"] = counts;
  Json cex = Json::array();
  for (const auto& c : rep.counterexamples) {
    Json tuple = Json::object();
    for (const auto& [k, v] : c.tuple) tuple[k] = v;
    cex.push_back({{"tuple", tuple}, {"statement", c.statement}});
  }
  j["counterexamples"] = cex;
  return j;
}

}  // namespace bcinv::lab
