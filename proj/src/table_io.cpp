#include <iomanip>
#include <sstream>

#include "qsys/kr_qsystem.hpp"

namespace qsys {

using nlohmann::json;

namespace {

std::string hp_string(const Real& x) { return x.str(0, std::ios_base::scientific); }

std::string short_string(const QDimValue& v) {
  if (v.is_zero()) return "0";
  if (v.is_int()) return v.int_value > 0 ? "1" : "-1";
  std::ostringstream os;
  os << std::setprecision(12) << v.numeric.convert_to<double>();
  return os.str();
}

}  // namespace

json to_json(const QTable& table) {
  json cells = json::array();
  for (int a = 1; a <= table.rank; ++a) {
    for (int m = 0; m <= table.m_max; ++m) {
      const QCell& c = table.cell(a, m);
      json prov = json::array();
      for (const auto& w : c.provenance) prov.push_back(w.coords);
      json reduced = json::array();
      for (const auto& t : c.reduced) reduced.push_back({{"coords", t.rep.coords}, {"coeff", t.coeff}});
      cells.push_back({{"a", a},
                       {"m", m},
                       {"exact", c.value.tag()},
                       {"numeric", c.value.numeric.convert_to<double>()},
                       {"numeric_hp", hp_string(c.value.numeric)},
                       {"raw_sum_hp", hp_string(c.raw_sum)},
                       {"provenance", std::move(prov)},
                       {"reduced", std::move(reduced)}});
    }
  }
  return {{"family", std::string(1, family_letter(table.family))},
          {"rank", table.rank},
          {"level", table.level},
          {"h", table.coxeter},
          {"m_max", table.m_max},
          {"precision_bits", working_precision_bits()},
          {"cells", std::move(cells)}};
}

QTable table_from_json(const json& j) {
  QTable t;
  t.family = parse_family(j.at("family").get<std::string>());
  t.rank = j.at("rank").get<int>();
  t.level = j.at("level").get<int>();
  t.coxeter = j.at("h").get<int>();
  t.m_max = j.contains("m_max") ? j.at("m_max").get<int>() : t.level + t.coxeter;
  if (t.rank < 1 || t.m_max < 0) throw std::invalid_argument("table JSON: bad extent");
  t.cells.resize(static_cast<std::size_t>(t.rank * (t.m_max + 1)));
  for (const auto& jc : j.at("cells")) {
    const int a = jc.at("a").get<int>();
    const int m = jc.at("m").get<int>();
    if (a < 1 || a > t.rank || m < 0 || m > t.m_max) throw std::invalid_argument("table JSON: cell out of range");
    QCell& c = t.cell(a, m);
    int iv = 0;
    const auto kind = QDimValue::parse_tag(jc.at("exact").get<std::string>(), &iv);
    Real numeric = jc.contains("numeric_hp") ? Real(jc.at("numeric_hp").get<std::string>())
                                             : Real(jc.at("numeric").get<double>());
    switch (kind) {
      case QDimValue::Exact::Zero: c.value = QDimValue::zero(); break;
      case QDimValue::Exact::Int: c.value = QDimValue::unit(iv); break;
      case QDimValue::Exact::Generic: c.value = QDimValue::generic(std::move(numeric)); break;
    }
    c.raw_sum = jc.contains("raw_sum_hp") ? Real(jc.at("raw_sum_hp").get<std::string>()) : c.value.numeric;
    for (const auto& p : jc.at("provenance")) {
      AffineWeight w{t.level, p.get<std::vector<int>>()};
      if (w.coords.size() != static_cast<std::size_t>(t.rank + 1))
        throw std::invalid_argument("table JSON: provenance weight has wrong size");
      c.provenance.push_back(std::move(w));
    }
    if (jc.contains("reduced"))
      for (const auto& rj : jc.at("reduced"))
        c.reduced.push_back({AffineWeight{t.level, rj.at("coords").get<std::vector<int>>()}, rj.at("coeff").get<int>()});
  }
  return t;
}

std::string to_csv(const QTable& table) {
  std::ostringstream os;
  os << "a,m,value,exact_tag\n";
  for (int a = 1; a <= table.rank; ++a)
    for (int m = 0; m <= table.m_max; ++m) {
      const QDimValue& v = table.value(a, m);
      os << a << ',' << m << ',' << std::setprecision(17) << v.numeric.convert_to<double>() << ',' << v.tag() << '\n';
    }
  return os.str();
}

std::string to_text(const QTable& table) {
  std::ostringstream os;
  os << family_letter(table.family) << table.rank << ", level k = " << table.level << ", h = " << table.coxeter
     << "\n\n";
  constexpr int kWidth = 18;
  os << std::setw(6) << "m";
  for (int a = 1; a <= table.rank; ++a) os << std::setw(kWidth) << ("z^(" + std::to_string(a) + ")");
  os << '\n';
  for (int m = 0; m <= table.m_max; ++m) {
    os << std::setw(6) << m;
    for (int a = 1; a <= table.rank; ++a) os << std::setw(kWidth) << short_string(table.value(a, m));
    os << '\n';
  }
  os << "\nreduced expansions (w_i stands for the affine fundamental weight):\n";
  for (int a = 1; a <= table.rank; ++a) {
    for (int m = 0; m <= table.m_max; ++m)
      os << "  z^(" << a << ")_" << m << " = " << format_reduced(table.cell(a, m).reduced) << '\n';
  }
  return os.str();
}

json to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json jc{{"name", c.name}, {"applicable", c.applicable}, {"pass", c.pass}, {"worst", c.worst}};
    if (!c.pass) jc["failure"] = {{"a", c.fail_a}, {"m", c.fail_m}, {"detail", c.detail}};
    checks.push_back(std::move(jc));
  }
  return {{"title", report.title}, {"pass", report.pass()}, {"checks", std::move(checks)}};
}

json to_json(const QSystemReport& report) {
  return {{"tol", report.tol},
          {"max_residual", report.max_residual},
          {"worst", {{"a", report.worst_a}, {"m", report.worst_m}}},
          {"max_abs_cell", report.max_abs_cell},
          {"pass", report.pass}};
}

}  // namespace qsys
