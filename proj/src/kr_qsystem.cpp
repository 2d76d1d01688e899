#include "qsys/kr_qsystem.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace qsys {

namespace {

bool multi_term_node(int a, const DynkinData& dynkin) {
  return dynkin.family == Family::D && a <= dynkin.rank - 2;
}

double to_double(const Real& x) { return x.convert_to<double>(); }

void check_node_range(int a, const DynkinData& dynkin) {
  if (a < 1 || a > dynkin.rank)
    throw std::out_of_range("node " + std::to_string(a) + " outside 1.." + std::to_string(dynkin.rank));
}

}  // namespace

unsigned long long kr_term_count(int a, int m, const DynkinData& dynkin) {
  check_node_range(a, dynkin);
  if (!multi_term_node(a, dynkin)) return 1;
  const auto n = static_cast<unsigned long long>(a / 2);
  unsigned long long c = 1;
  for (unsigned long long i = 1; i <= n; ++i) c = c * (static_cast<unsigned long long>(m) + i) / i;
  return c;
}

KRDecomposition kr_decompose(int a, int m, const DynkinData& dynkin) {
  check_node_range(a, dynkin);
  if (m < 0) throw std::invalid_argument("kr_decompose: m must be >= 0");
  KRDecomposition out{a, m, {}};
  const int r = dynkin.rank;
  if (!multi_term_node(a, dynkin)) {
    out.terms.push_back({Weight::fundamental(r, a, m), 1});
    return out;
  }
  // Free nodes a, a-2, ..., ending in 1 (odd a) or 0 (even a, omega_0 = 0).
  std::vector<int> nodes;
  for (int j = a; j >= 0; j -= 2) nodes.push_back(j);
  std::vector<int> k(nodes.size(), 0);
  std::function<void(std::size_t, int)> fill = [&](std::size_t pos, int remaining) {
    if (pos + 1 == nodes.size()) {
      k[pos] = remaining;
      Weight w = Weight::zero(r);
      for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] > 0) w.coords[static_cast<std::size_t>(nodes[i] - 1)] = k[i];
      out.terms.push_back({std::move(w), 1});
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      k[pos] = v;
      fill(pos + 1, remaining - v);
    }
  };
  fill(0, m);
  return out;
}

QCell& QTable::cell(int a, int m) {
  return cells.at(static_cast<std::size_t>((a - 1) * (m_max + 1) + m));
}

const QCell& QTable::cell(int a, int m) const {
  if (a < 1 || a > rank || m < 0 || m > m_max)
    throw std::out_of_range("table cell (" + std::to_string(a) + "," + std::to_string(m) + ") out of range");
  return cells[static_cast<std::size_t>((a - 1) * (m_max + 1) + m)];
}

QTable build_qtable(const DynkinData& dynkin, int level, std::optional<int> m_max) {
  if (level < 1) throw std::invalid_argument("build_qtable: level must be >= 1");
  QTable t;
  t.family = dynkin.family;
  t.rank = dynkin.rank;
  t.level = level;
  t.coxeter = dynkin.coxeter;
  t.m_max = m_max.value_or(level + dynkin.coxeter);
  if (t.m_max < 0) throw std::invalid_argument("build_qtable: m_max must be >= 0");

  const QDimEvaluator eval(dynkin, level);
  std::map<std::vector<int>, QDimValue> cache;
  auto qd = [&](const AffineWeight& w) -> const QDimValue& {
    auto it = cache.find(w.coords);
    if (it == cache.end()) it = cache.emplace(w.coords, eval.affine(w)).first;
    return it->second;
  };

  t.cells.resize(static_cast<std::size_t>(t.rank * (t.m_max + 1)));
  for (int a = 1; a <= t.rank; ++a) {
    for (int m = 0; m <= t.m_max; ++m) {
      QCell& c = t.cell(a, m);
      Real sum = 0;
      std::map<std::vector<int>, int> signed_reps;
      for (const KRTerm& term : kr_decompose(a, m, dynkin).terms) {
        AffineWeight w = affinize(dynkin, term.weight, level);
        sum += term.multiplicity * qd(w).numeric;
        const ReductionResult red = reduce_to_alcove(dynkin, w);
        if (!red.is_zero()) signed_reps[red.rep.coords] += term.multiplicity * red.sign;
        c.provenance.push_back(std::move(w));
      }
      for (auto& [coords, coeff] : signed_reps)
        if (coeff != 0) c.reduced.push_back({AffineWeight{level, coords}, coeff});
      c.raw_sum = sum;

      if (c.reduced.empty()) {
        c.value = QDimValue::zero();
      } else if (c.reduced.size() == 1 && qd(c.reduced.front().rep).is_int() &&
                 std::abs(c.reduced.front().coeff) == 1) {
        c.value = QDimValue::unit(c.reduced.front().coeff * qd(c.reduced.front().rep).int_value);
      } else {
        c.value = QDimValue::generic(sum);
      }
    }
  }
  return t;
}

std::string format_reduced(const std::vector<ReducedTerm>& reduced) {
  if (reduced.empty()) return "0";
  std::ostringstream os;
  bool first_term = true;
  for (const auto& term : reduced) {
    if (term.coeff < 0) os << (first_term ? "-" : " - ");
    else if (!first_term) os << " + ";
    if (std::abs(term.coeff) != 1) os << std::abs(term.coeff) << '*';
    os << "D(";
    bool first = true;
    for (std::size_t i = 0; i < term.rep.coords.size(); ++i) {
      const int c = term.rep.coords[i];
      if (c == 0) continue;
      if (!first) os << '+';
      if (c != 1) os << c;
      os << 'w' << i;
      first = false;
    }
    if (first) os << '0';
    os << ')';
    first_term = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

void CheckOutcome::fail_at(int a, int m, std::string why) {
  if (!pass) return;
  pass = false;
  fail_a = a;
  fail_m = m;
  detail = std::move(why);
}

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.pass; });
}

const CheckOutcome* VerificationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return &c;
  return nullptr;
}

const CheckOutcome* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

Real neighbor_product(const QTable& table, const DynkinData& dynkin, int a, int m) {
  Real p = 1;
  for (int b : dynkin.neighbors(a)) p *= table.numeric(b, m);
  return p;
}

std::string cell_name(int a, int m) { return "z^(" + std::to_string(a) + ")_" + std::to_string(m); }

void require_extent(const QTable& table, int m_needed, const char* who) {
  if (table.m_max < m_needed)
    throw std::invalid_argument(std::string(who) + ": table must extend to m = " + std::to_string(m_needed));
}

}  // namespace

QSystemReport verify_qsystem(const QTable& table, const DynkinData& dynkin, double tol) {
  QSystemReport rep;
  rep.tol = tol;
  for (const auto& c : table.cells) rep.max_abs_cell = std::max(rep.max_abs_cell, std::abs(to_double(c.value.numeric)));
  for (int a = 1; a <= table.rank; ++a) {
    for (int m = 1; m + 1 <= table.m_max; ++m) {
      const Real& q = table.numeric(a, m);
      const Real lhs = q * q;
      const Real rhs = neighbor_product(table, dynkin, a, m) + table.numeric(a, m - 1) * table.numeric(a, m + 1);
      const double res = to_double(boost::multiprecision::abs(lhs - rhs));
      rep.residuals.push_back({a, m, res});
      if (res > rep.max_residual) {
        rep.max_residual = res;
        rep.worst_a = a;
        rep.worst_m = m;
      }
    }
  }
  rep.pass = rep.max_residual <= tol * (1.0 + rep.max_abs_cell * rep.max_abs_cell);
  return rep;
}

VerificationReport verify_kns(const QTable& table, const DynkinData& dynkin, double tol) {
  const int k = table.level;
  const int h = table.coxeter;
  require_extent(table, k + h, "verify_kns");
  VerificationReport rep;
  rep.title = "KNS properties for " + dynkin.name() + ", k = " + std::to_string(k);

  CheckOutcome positivity{"positivity"};
  CheckOutcome symmetry{"symmetry"};
  CheckOutcome unit{"unit_boundary"};
  CheckOutcome unimodal{"unimodality"};
  CheckOutcome zeros{"zeros"};
  CheckOutcome kh{"k_plus_h"};
  symmetry.applicable = k >= 2;
  unimodal.applicable = k >= 2;
  kh.applicable = dynkin.family == Family::D;

  for (int a = 1; a <= table.rank; ++a) {
    for (int m = 0; m <= k; ++m) {
      const QDimValue& v = table.value(a, m);
      if (v.is_zero() || v.numeric <= 0) positivity.fail_at(a, m, cell_name(a, m) + " is not positive");
    }
    for (int m = 1; m <= k - 1; ++m) {
      const double d = to_double(boost::multiprecision::abs(table.numeric(a, m) - table.numeric(a, k - m)));
      symmetry.worst = std::max(symmetry.worst, d);
      if (d > tol) symmetry.fail_at(a, m, cell_name(a, m) + " != " + cell_name(a, k - m));
    }
    {
      const QDimValue& v = table.value(a, k);
      const double d = to_double(boost::multiprecision::abs(v.numeric - 1));
      unit.worst = std::max(unit.worst, d);
      if (!(v.is_int() && v.int_value == 1) && !(v.is_generic() && d <= tol))
        unit.fail_at(a, k, cell_name(a, k) + " != 1");
    }
    for (int m = 1; m <= k / 2; ++m) {
      const double gap = to_double(table.numeric(a, m) - table.numeric(a, m - 1));
      if (!(gap > tol)) unimodal.fail_at(a, m, cell_name(a, m - 1) + " >= " + cell_name(a, m));
    }
    for (int j = 1; j <= h - 1; ++j) {
      const QDimValue& v = table.value(a, k + j);
      const double d = to_double(boost::multiprecision::abs(v.numeric));
      zeros.worst = std::max(zeros.worst, d);
      if (!v.is_zero() && !(v.is_generic() && d <= tol)) zeros.fail_at(a, k + j, cell_name(a, k + j) + " != 0");
    }
    if (kh.applicable) {
      const int r = dynkin.rank;
      const int expected = (a <= r - 2 || r % 4 == 0 || r % 4 == 1) ? 1 : -1;
      const QDimValue& v = table.value(a, k + h);
      const double d = to_double(boost::multiprecision::abs(v.numeric - expected));
      kh.worst = std::max(kh.worst, d);
      const bool ok = v.is_int() ? v.int_value == expected : (v.is_generic() && d <= tol);
      if (!ok) kh.fail_at(a, k + h, cell_name(a, k + h) + " != " + std::to_string(expected));
    }
  }
  rep.checks = {positivity, symmetry, unit, unimodal, zeros, kh};
  return rep;
}

VerificationReport midpoint_checks(const QTable& table, const DynkinData& dynkin, double tol) {
  const int k = table.level;
  require_extent(table, k, "midpoint_checks");
  VerificationReport rep;
  rep.title = "midpoint identities for " + dynkin.name() + ", k = " + std::to_string(k);

  CheckOutcome middle{k % 2 ? "middle_s_eq_s_plus_1" : "middle_s_minus_1_eq_s_plus_1"};
  middle.applicable = dynkin.family == Family::D && (k % 2 == 1 || k >= 2);
  CheckOutcome tips{"single_term_symmetry"};

  const int s = k / 2;
  for (int a = 1; a <= table.rank; ++a) {
    if (multi_term_node(a, dynkin)) {
      if (a < 2 || !middle.applicable) continue;
      const int lo = k % 2 ? s : s - 1;
      const int hi = s + 1;
      const double d = to_double(boost::multiprecision::abs(table.numeric(a, lo) - table.numeric(a, hi)));
      middle.worst = std::max(middle.worst, d);
      if (d > tol) middle.fail_at(a, hi, cell_name(a, lo) + " != " + cell_name(a, hi));
    } else {
      for (int m = 1; m < k; ++m) {
        const double d = to_double(boost::multiprecision::abs(table.numeric(a, m) - table.numeric(a, k - m)));
        tips.worst = std::max(tips.worst, d);
        if (d > tol) tips.fail_at(a, m, cell_name(a, m) + " != " + cell_name(a, k - m));
      }
    }
  }
  rep.checks = {middle, tips};
  return rep;
}

ForcingPrediction predict_forced_rows(const QTable& table, const DynkinData& dynkin) {
  const int k = table.level;
  const int h = table.coxeter;
  const int r = table.rank;
  require_extent(table, k + h, "predict_forced_rows");
  const QDimEvaluator eval(dynkin, k);

  // zero[a][m] for m in [k+1, k+h-1]
  std::map<std::pair<int, int>, bool> zero;
  auto is_zero = [&](int a, int m) {
    auto it = zero.find({a, m});
    return it != zero.end() && it->second;
  };
  for (int a = 1; a <= r; ++a) zero[{a, k + 1}] = table.value(a, k + 1).is_zero();
  for (int m = k + 1; m <= k + h - 1; ++m) zero[{1, m}] = eval(Weight::fundamental(r, 1, m)).is_zero();

  // (Q^a_m)^2 = prod_b Q^b_m + Q^a_{m-1} Q^a_{m+1}: a zero above and a zero neighbor force a zero.
  for (int m = k + 2; m <= k + h - 1; ++m) {
    for (bool changed = true; changed;) {
      changed = false;
      for (int a = 2; a <= r; ++a) {
        if (is_zero(a, m) || !is_zero(a, m - 1)) continue;
        for (int b : dynkin.neighbors(a)) {
          if (!is_zero(b, m)) continue;
          zero[{a, m}] = true;
          changed = true;
          break;
        }
      }
    }
  }

  ForcingPrediction out;
  out.tags.assign(static_cast<std::size_t>(r), std::vector<std::string>(static_cast<std::size_t>(h - 1)));
  for (int a = 1; a <= r; ++a)
    for (int m = k + 2; m <= k + h - 1; ++m)
      out.tags[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(m - k - 2)] = is_zero(a, m) ? "0" : "";

  // Row k + h with row k + h - 1 all zero: (Q^a)^2 = prod_b Q^b, seeded by Q^(0) := 1 and
  // Q^(1)_{k+h} from the product formula.
  bool prev_row_zero = true;
  for (int a = 1; a <= r; ++a) prev_row_zero = prev_row_zero && is_zero(a, k + h - 1);
  const QDimValue seed = eval(Weight::fundamental(r, 1, k + h));
  if (!prev_row_zero || !seed.is_int()) return out;

  std::vector<int> v(static_cast<std::size_t>(r + 1), 0);
  v[0] = 1;
  v[1] = seed.int_value;
  const int chain_end = dynkin.family == Family::D ? r - 2 : r;
  for (int a = 2; a <= chain_end; ++a)
    v[static_cast<std::size_t>(a)] = v[static_cast<std::size_t>(a - 1)] * v[static_cast<std::size_t>(a - 1)] /
                                     v[static_cast<std::size_t>(a - 2)];
  auto& last = out.tags;
  const auto col = static_cast<std::size_t>(h - 2);
  for (int a = 1; a <= chain_end; ++a)
    last[static_cast<std::size_t>(a - 1)][col] = v[static_cast<std::size_t>(a)] > 0 ? "+1" : "-1";
  if (dynkin.family == Family::D) {
    // (Q^{r-1})^2 = (Q^r)^2 = Q^{r-2} = 1 determines the fork tips up to a common sign.
    const std::string fork = v[static_cast<std::size_t>(r - 2)] == 1 ? "+-1" : "";
    last[static_cast<std::size_t>(r - 2)][col] = fork;
    last[static_cast<std::size_t>(r - 1)][col] = fork;
  }
  return out;
}

VerificationReport check_forcing(const QTable& table, const DynkinData& dynkin) {
  const int k = table.level;
  const int h = table.coxeter;
  const int r = table.rank;
  const ForcingPrediction pred = predict_forced_rows(table, dynkin);
  VerificationReport rep;
  rep.title = "zero/unit forcing for " + dynkin.name() + ", k = " + std::to_string(k);

  CheckOutcome zero_rows{"forced_zero_rows"};
  CheckOutcome unit_row{"forced_unit_row"};
  CheckOutcome fork{"fork_system"};
  fork.applicable = dynkin.family == Family::D;

  for (int a = 1; a <= r; ++a) {
    for (int m = k + 2; m <= k + h - 1; ++m) {
      const bool predicted = pred.tags[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(m - k - 2)] == "0";
      if (predicted != table.value(a, m).is_zero())
        zero_rows.fail_at(a, m, cell_name(a, m) + (predicted ? " forced zero but tagged " : " not forced but tagged ") +
                                    table.value(a, m).tag());
    }
    const std::string& want = pred.tags[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(h - 2)];
    const QDimValue& got = table.value(a, k + h);
    const bool ok = want == "+-1" ? got.is_int() : (!want.empty() && got.tag() == want);
    if (!ok) unit_row.fail_at(a, k + h, cell_name(a, k + h) + " forced " + (want.empty() ? "nothing" : want) +
                                            " but tagged " + got.tag());
  }
  if (fork.applicable) {
    const QDimValue& mid = table.value(r - 2, k + h);
    const QDimValue& t1 = table.value(r - 1, k + h);
    const QDimValue& t2 = table.value(r, k + h);
    const bool exact = mid.is_int() && t1.is_int() && t2.is_int();
    if (!exact || mid.int_value * mid.int_value != t1.int_value * t2.int_value ||
        t1.int_value * t1.int_value != mid.int_value || t2.int_value * t2.int_value != mid.int_value)
      fork.fail_at(r - 1, k + h, "fork system at m = k + h not satisfied exactly");
  }
  rep.checks = {zero_rows, unit_row, fork};
  return rep;
}

VerificationReport check_first_row_propagation(const QTable& table, const DynkinData& dynkin, double rel_tol) {
  const int k = table.level;
  const int r = table.rank;
  require_extent(table, k, "check_first_row_propagation");
  VerificationReport rep;
  rep.title = "rebuild from first row for " + dynkin.name() + ", k = " + std::to_string(k);
  CheckOutcome c{"first_row_propagation"};
  c.applicable = k >= 2;

  // rows[m][a - 1]
  std::vector<std::vector<Real>> rows(static_cast<std::size_t>(k + 1), std::vector<Real>(static_cast<std::size_t>(r)));
  for (int a = 1; a <= r; ++a) {
    rows[0][static_cast<std::size_t>(a - 1)] = table.numeric(a, 0);
    if (k >= 1) rows[1][static_cast<std::size_t>(a - 1)] = table.numeric(a, 1);
  }
  for (int m = 1; m + 1 <= k; ++m) {
    for (int a = 1; a <= r; ++a) {
      const Real& qm = rows[static_cast<std::size_t>(m)][static_cast<std::size_t>(a - 1)];
      Real prod = 1;
      for (int b : dynkin.neighbors(a)) prod *= rows[static_cast<std::size_t>(m)][static_cast<std::size_t>(b - 1)];
      const Real& below = rows[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(a - 1)];
      if (below == 0) {
        c.fail_at(a, m - 1, "zero divisor while rebuilding");
        rep.checks = {c};
        return rep;
      }
      rows[static_cast<std::size_t>(m + 1)][static_cast<std::size_t>(a - 1)] = (qm * qm - prod) / below;
    }
  }
  for (int a = 1; a <= r; ++a) {
    for (int m = 2; m <= k; ++m) {
      const Real& want = table.numeric(a, m);
      const Real& got = rows[static_cast<std::size_t>(m)][static_cast<std::size_t>(a - 1)];
      const double d = to_double(boost::multiprecision::abs(got - want) / std::max<Real>(Real(1), abs(want)));
      c.worst = std::max(c.worst, d);
      if (d > rel_tol) c.fail_at(a, m, "rebuilt " + cell_name(a, m) + " deviates by " + std::to_string(d));
    }
  }
  rep.checks = {c};
  return rep;
}

VerificationReport verify_all(const QTable& table, const DynkinData& dynkin, double tol) {
  VerificationReport all;
  all.title = "verification for " + dynkin.name() + ", k = " + std::to_string(table.level);
  const QSystemReport qs = verify_qsystem(table, dynkin, tol);
  CheckOutcome q{"qsystem_residual"};
  q.worst = qs.max_residual;
  if (!qs.pass) q.fail_at(qs.worst_a, qs.worst_m, "Q-system residual " + std::to_string(qs.max_residual));
  all.checks.push_back(q);
  for (const auto& part : {verify_kns(table, dynkin, tol), midpoint_checks(table, dynkin, tol)})
    all.checks.insert(all.checks.end(), part.checks.begin(), part.checks.end());
  return all;
}

}  // namespace qsys
