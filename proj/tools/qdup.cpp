// qdup: command-line front end for the quantum-duplicate engine.
//
// Exit codes: 0 success, 1 certification failure, 2 invalid input, 3 budget exceeded.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qdup/json_io.hpp"
#include "qdup/verify.hpp"

using namespace qdup;

namespace {

enum Exit { kOk = 0, kCertification = 1, kInput = 2, kBudget = 3 };

struct Common {
  std::string field = "F3";
  std::string format = "table";
  std::string output;
  int jobs = 1;
  std::uint64_t budget = 0;

  Budgets budgets() const {
    Budgets b = default_budgets();
    if (budget > 0) b = Budgets{budget, budget * 50};
    return b;
  }
};

// Plain text table with left-aligned columns.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render() const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], r[i].size());
      }
    std::ostringstream os;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      std::string line;
      for (std::size_t i = 0; i < rows_[k].size(); ++i) {
        line += rows_[k][i];
        if (i + 1 < rows_[k].size()) line += std::string(width[i] - rows_[k][i].size() + 2, ' ');
      }
      os << line << "\n";
      if (k == 0) {
        std::size_t total = 0;
        for (auto w : width) total += w + 2;
        os << std::string(total > 2 ? total - 2 : 0, '-') << "\n";
      }
    }
    return os.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

// yx as a + bx + cy + dxy with zero terms dropped.
std::string relation(const Tau2x2& t) {
  std::string out;
  const std::pair<const Scalar*, const char*> terms[] = {{&t.a, ""}, {&t.b, "x"}, {&t.c, "y"}, {&t.d, "xy"}};
  for (const auto& [c, mono] : terms) {
    if (c->is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string coeff = c->to_string();
    if (coeff.find('+') != std::string::npos || coeff.find('-') != std::string::npos) coeff = "(" + coeff + ")";
    if (*mono == '\0') out += coeff;
    else out += (coeff == "1" ? "" : coeff) + mono;
  }
  return "yx = " + (out.empty() ? std::string("0") : out);
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw Error(Errc::ParseError, "cannot write " + c.output);
  out << text;
  if (!text.empty() && text.back() != '\n') out << "\n";
}

void require_format(const Common& c, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (c.format == a) return;
  throw Error(Errc::ParseError, "format '" + c.format + "' is not available for this command");
}

TwoDim two_dim_option(const std::string& spec, const std::string& alpha, const std::string& beta, const Field& f) {
  if (!spec.empty()) return parse_two_dim(spec, f);
  return TwoDim(f.parse_scalar(alpha), f.parse_scalar(beta));
}

// ------------------------------------------------------------------ commands

int cmd_duplicates(const Common& c, int n, const std::string& b_spec, const std::string& alpha,
                   const std::string& beta) {
  require_format(c, {"table", "json", "dot"});
  Field f = Field::parse(c.field);
  TwoDim b = two_dim_option(b_spec, alpha, beta, f);
  DuplicatesDocument doc{f, n, b, list_duplicates(n, b, c.jobs)};
  bool all_certified = true;
  for (const auto& e : doc.entries)
    if (!e.symbolic && !e.certified) all_certified = false;

  if (c.format == "json") {
    emit(c, duplicates_to_json(doc));
  } else if (c.format == "dot") {
    std::string out;
    for (std::size_t i = 0; i < doc.entries.size(); ++i)
      out += doc.entries[i].quiver.to_dot(doc.entries[i].colors, "Q" + std::to_string(i + 1));
    emit(c, out);
  } else {
    Table t({"set map", "colors", "label", "certified"});
    for (const auto& e : doc.entries)
      t.add({e.quiver.set_map_string(), join(e.colors, ","), e.label,
             e.symbolic ? "symbolic" : e.certified ? "yes" : "NO: " + e.note});
    emit(c, b.to_string() + ", n=" + std::to_string(n) + ": " + std::to_string(doc.entries.size()) +
                (doc.entries.size() == 1 ? " entry\n" : " entries\n") +
                t.render());
  }
  return all_certified ? kOk : kCertification;
}

int cmd_enumerate_tau(const Common& c, const std::string& a_spec, const std::string& b_spec) {
  require_format(c, {"table", "json"});
  Field f = Field::parse(c.field);
  TauDocument d{parse_two_dim(a_spec, f), parse_two_dim(b_spec, f), {}};
  d.taus = brute_force_tau_2x2(d.a, d.b, c.budgets());
  if (c.format == "json") {
    emit(c, taus_to_json(d));
    return kOk;
  }
  Table t({"a", "b", "c", "d", "relation"});
  for (const auto& tau : d.taus)
    t.add({tau.a.to_string(), tau.b.to_string(), tau.c.to_string(), tau.d.to_string(), relation(tau)});
  emit(c, d.a.to_string() + " (x) " + d.b.to_string() + ": " + std::to_string(d.taus.size()) + " twisting maps\n" +
              t.render());
  return kOk;
}

int cmd_catalog4(const Common& c, const std::string& gabriel_path) {
  require_format(c, {"table", "json"});
  Field f = Field::parse(c.field);
  auto gabriel = load_gabriel(gabriel_path.empty() ? default_gabriel_path() : gabriel_path);
  Catalog4 cat = catalog4(f, gabriel, c.budgets(), c.jobs);
  if (c.format == "json") {
    emit(c, catalog_to_json(cat));
    return kOk;
  }
  Table t({"class", "representative", "taus", "factor pairs", "diagram"});
  for (const auto& r : cat.rows) {
    std::string diagram = r.gabriel.empty() ? "-" : r.gabriel + (r.gabriel_factorizable ? " [boxed]" : " [unboxed]");
    t.add({r.label, r.representative, std::to_string(r.tau_count), join(r.factor_pairs, "; "), diagram});
  }
  emit(c, "dimension 4 over " + f.to_string() + ": " + std::to_string(cat.rows.size()) + " classes from " +
              std::to_string(cat.products) + " twisted products\n" + t.render());
  return kOk;
}

int cmd_verify(const Common& c, bool isos, int oracle_n) {
  require_format(c, {"table", "json"});
  if (!isos && oracle_n == 0) throw Error(Errc::ParseError, "verify needs --paper-isos or --oracle N");
  bool ok = true;
  std::ostringstream out;
  if (isos) {
    Table t({"map", "fields", "instances", "failures", "first failure"});
    for (const auto& chk : certify_explicit_isomorphisms()) {
      ok = ok && chk.ok();
      t.add({chk.name, join(chk.fields, ","), std::to_string(chk.instances), std::to_string(chk.failures),
             chk.first_failure.empty() ? "-" : chk.first_failure});
    }
    out << t.render();
  }
  if (oracle_n > 0) {
    Field f = Field::parse(c.field);
    Table t({"B", "n", "enumerated", "brute force", "equal"});
    for (const auto& r : oracle_suite(oracle_n, f, c.budgets())) {
      ok = ok && r.equal;
      t.add({r.b.to_string(), std::to_string(r.n), std::to_string(r.enumerated), std::to_string(r.brute),
             r.equal ? "yes" : "NO"});
    }
    if (isos) out << "\n";
    out << t.render();
  }
  out << (ok ? "all checks passed\n" : "FAILURES present\n");
  emit(c, out.str());
  return ok ? kOk : kCertification;
}

int cmd_quiver(const Common& c, const std::string& set_map, bool dot, const std::string& colors) {
  FunctionalQuiver q = parse_set_map(set_map);
  std::vector<std::string> cols;
  if (!colors.empty()) {
    std::stringstream ss(colors);
    for (std::string item; std::getline(ss, item, ',');) cols.push_back(item);
    if (cols.size() != q.size()) throw Error(Errc::DimensionMismatch, "one color per vertex expected");
  }
  if (dot || c.format == "dot") {
    emit(c, q.to_dot(cols));
    return kOk;
  }
  require_format(c, {"table", "json"});
  if (c.format == "json") {
    emit(c, quiver_to_json(q));
    return kOk;
  }
  Table t({"component", "vertices", "cycle", "strict", "loop"});
  int idx = 0;
  for (const auto& comp : components(q)) {
    std::vector<std::string> vs, cy;
    for (int v : comp.vertices) vs.push_back(std::to_string(v + 1));
    for (int v : comp.cycle) cy.push_back(std::to_string(v + 1));
    t.add({std::to_string(++idx), join(vs, ","), join(cy, "->"), comp.strict ? "yes" : "no",
           comp.loop_vertex ? std::to_string(*comp.loop_vertex + 1) : "-"});
  }
  emit(c, "set map " + q.set_map_string() + "\n" + t.render());
  return kOk;
}

int cmd_probe(const Common& c, const std::string& a_spec) {
  require_format(c, {"table"});
  Field f = Field::parse(c.field);
  TwoDim a = parse_two_dim(a_spec, f);
  ProbeResult r = conjecture_probe(a, c.budgets());
  std::string text = a.to_string() + " (x) itself: scanned " + std::to_string(r.scanned) + " twisting maps, ";
  text += r.found ? "simple witness " + relation(*r.witness) : "none simple (complete search)";
  emit(c, text);
  return kOk;
}

int cmd_orbits(const Common& c, const std::string& alpha, const std::string& beta) {
  require_format(c, {"table"});
  Field f = Field::parse(c.field);
  emit(c, cq_orbit_report(f.parse_scalar(alpha), f.parse_scalar(beta)).to_string());
  return kOk;
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case Errc::BudgetExceeded: return kBudget;
    case Errc::CertificationFailed:
    case Errc::AxiomViolated: return kCertification;
    default: return kInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qdup: exact enumeration and classification of quantum duplicates"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub, bool with_jobs) {
    sub->add_option("--field", common.field, "Field: Q, F<p>, F<p>[t^2=c], Q[t^2=c]")->capture_default_str();
    sub->add_option("--format", common.format, "Output format: table, json or dot")->capture_default_str();
    sub->add_option("-o,--output", common.output, "Write output to a file");
    sub->add_option("--budget", common.budget, "Element-count budget (default: QDUP_BUDGET or 1000000)");
    if (with_jobs) sub->add_option("--jobs", common.jobs, "Worker threads")->check(CLI::Range(1, 256));
  };

  int n = 2;
  std::string b_spec, alpha = "1", beta = "0";
  auto* dup = app.add_subcommand("duplicates", "All twisting maps k^n (x) B with labels and certificates");
  add_common(dup, true);
  dup->add_option("--n", n, "Number of vertices")->check(CLI::Range(1, 6));
  dup->add_option("--b", b_spec, "B as k2, dual, ext or alpha,beta (overrides --alpha/--beta)");
  dup->add_option("--alpha", alpha, "B = k[x]/(x^2 - alpha x + beta)")->capture_default_str();
  dup->add_option("--beta", beta)->capture_default_str();

  std::string a_spec = "dual", b2_spec = "dual";
  auto* tau = app.add_subcommand("enumerate-tau", "All twisting maps between two 2-dimensional algebras");
  add_common(tau, false);
  tau->add_option("--a", a_spec, "k2, dual, ext or alpha,beta")->capture_default_str();
  tau->add_option("--b", b2_spec, "k2, dual, ext or alpha,beta")->capture_default_str();

  std::string gabriel;
  auto* cat = app.add_subcommand("catalog4", "Isomorphism classes of 4-dimensional twisted products");
  add_common(cat, true);
  cat->add_option("--gabriel", gabriel, "Diagram data file");

  bool isos = false;
  int oracle_n = 0;
  auto* ver = app.add_subcommand("verify", "Certification and oracle suites");
  add_common(ver, false);
  ver->add_flag("--paper-isos", isos, "Check every explicit isomorphism");
  ver->add_option("--oracle", oracle_n, "Enumerator against brute force for n = 1..N over --field")
      ->check(CLI::Range(1, 4));

  std::string set_map, colors;
  bool dot = false;
  auto* quiv = app.add_subcommand("quiver", "Inspect the functional quiver of a set map");
  add_common(quiv, false);
  quiv->add_option("--set-map", set_map, "1-based images, e.g. 1,1,2")->required();
  quiv->add_option("--colors", colors, "Comma-separated vertex colors for DOT labels");
  quiv->add_flag("--dot", dot, "Emit Graphviz DOT");

  std::string probe_a = "k2";
  auto* probe = app.add_subcommand("probe", "Search for a simple A (x)_tau A");
  add_common(probe, false);
  probe->add_option("--a", probe_a, "k2, dual, ext or alpha,beta")->capture_default_str();

  std::string oa = "1", ob = "1";
  auto* orb = app.add_subcommand("orbits", "Isomorphism classes of C_q over a finite field");
  add_common(orb, false);
  orb->add_option("--alpha", oa, "x^2 = alpha")->capture_default_str();
  orb->add_option("--beta", ob, "y^2 = beta")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*dup) return cmd_duplicates(common, n, b_spec, alpha, beta);
    if (*tau) return cmd_enumerate_tau(common, a_spec, b2_spec);
    if (*cat) return cmd_catalog4(common, gabriel);
    if (*ver) return cmd_verify(common, isos, oracle_n);
    if (*quiv) return cmd_quiver(common, set_map, dot, colors);
    if (*probe) return cmd_probe(common, probe_a);
    if (*orb) return cmd_orbits(common, oa, ob);
  } catch (const Error& e) {
    std::cerr << "qdup: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "qdup: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
