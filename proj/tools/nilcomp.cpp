#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "criteria.hpp"
#include "nilcomp/cubes.hpp"
#include "nilcomp/error.hpp"
#include "nilcomp/filtered.hpp"
#include "nilcomp/io.hpp"
#include "nilcomp/lift.hpp"
#include "nilcomp/nilseq.hpp"
#include "nilcomp/polymap.hpp"

using namespace nilcomp;

namespace {

struct Options {
  std::string out;
  std::string group, table, lattice, polymap, abelian, fibration, tau, freq, cube, generators, values;
  std::string matrix, member, at, periods, corner, report;
  std::vector<std::string> tables, pair;
  std::vector<long> heisenberg;
  unsigned s = 2, k = 1;
  int shift = 0;
  std::size_t arity = 0;
  std::string period, check, cap;
  std::uint64_t seed = 0;
};

std::string join(const std::vector<Integer>& xs, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + to_string(xs[i]);
  return s;
}

std::vector<Integer> integer_list(const std::string& text) {
  std::vector<Integer> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.push_back(parse_integer(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return out;
}

Integer positive(const std::string& text, const char* flag) {
  const Integer v = parse_integer(text);
  if (v <= 0) fail(ErrorKind::InvalidArgument, std::string(flag) + " must be positive");
  return v;
}

// A lattice given either as a file or inline ("lcs 3").
FilteredLattice lattice_arg(const std::string& value) {
  if (std::filesystem::is_regular_file(value)) return io::parse_lattice(io::read_file(value));
  return io::parse_lattice(value);
}

FiniteAbelianGroup table_group(const Options& o, const std::string& table_text) {
  if (!o.group.empty()) return io::parse_group(o.group);
  std::istringstream in(table_text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("group:", 0) == 0) return io::parse_group(line);
  fail(ErrorKind::InvalidArgument, "no --group given and the table has no 'group:' line");
}

std::string report_text(const io::Report& r) { return io::render_report(r); }

std::string run_gowers(const Options& o) {
  const std::string text = io::read_file(o.table);
  const auto table = io::parse_table(table_group(o, text), text);
  return io::format_double(gowers_norm(table, o.s)) + "\n";
}

std::string run_correlate(const Options& o) {
  const std::string a = io::read_file(o.tables.at(0));
  const std::string b = io::read_file(o.tables.at(1));
  const auto f = io::parse_table(table_group(o, a), a);
  const auto g = io::parse_table(table_group(o, b), b);
  const Complex c = correlate(f, g);
  return report_text({{"re", io::format_double(c.real())},
                      {"im", io::format_double(c.imag())},
                      {"abs", io::format_double(std::abs(c))}});
}

std::string run_taylor(const Options& o) {
  if (!o.polymap.empty()) {
    const auto pm = io::parse_polymap(io::read_file(o.polymap));
    if (o.at.empty()) return io::render_polymap(pm);
    return io::render_matrix(pm.eval(integer_list(o.at))) + "\n";
  }
  if (o.lattice.empty() || o.values.empty())
    fail(ErrorKind::InvalidArgument, "taylor needs --polymap, or --lattice with --values");
  const auto fl = lattice_arg(o.lattice);
  std::map<std::vector<Integer>, UnipotentMatrix> values;
  std::istringstream in(io::read_file(o.values));
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto semi = line.find(';');
    if (semi == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        fail(ErrorKind::Parse, "value line needs 'x ; matrix': " + line);
      continue;
    }
    values.insert_or_assign(integer_list(line.substr(0, semi)), io::parse_matrix(line.substr(semi + 1)));
  }
  const auto pm = interpolate(
      fl, o.arity,
      [&](const Point& x) {
        auto it = values.find(x);
        if (it == values.end()) fail(ErrorKind::Parse, "no value at grid point (" + join(x) + ")");
        return it->second;
      },
      o.shift);
  return io::render_polymap(pm);
}

std::string run_period(const Options& o) {
  if (!o.abelian.empty()) {
    const auto m = io::parse_abelian_polymap(io::read_file(o.abelian));
    if (!o.check.empty()) return report_text({{"periodic", is_periodic(m, positive(o.check, "--check")) ? "true" : "false"}});
    return report_text({{"minimal_period", to_string(minimal_period(m))}});
  }
  if (o.polymap.empty()) fail(ErrorKind::InvalidArgument, "period needs --polymap or --abelian");
  const auto pm = io::parse_polymap(io::read_file(o.polymap));
  if (!o.check.empty())
    return report_text({{"periodic", is_periodic_mod_lattice(pm, positive(o.check, "--check")) ? "true" : "false"}});
  return report_text({{"minimal_period", to_string(minimal_period(pm))}, {"periods", join(minimal_periods(pm))}});
}

std::string run_rationality(const Options& o) {
  if (!o.matrix.empty()) {
    if (o.lattice.empty()) fail(ErrorKind::InvalidArgument, "--matrix needs --lattice");
    const auto fl = lattice_arg(o.lattice);
    std::optional<Integer> cap;
    if (!o.cap.empty()) cap = positive(o.cap, "--cap");
    const auto q = rationality_order(fl, io::parse_matrix(o.matrix), cap);
    return report_text({{"order", q ? to_string(*q) : "none"}});
  }
  if (o.polymap.empty() || o.period.empty())
    fail(ErrorKind::InvalidArgument, "rationality needs --lattice with --matrix, or --polymap with --period");
  const auto pm = io::parse_polymap(io::read_file(o.polymap));
  const auto r = rationalize(pm, positive(o.period, "--period"));
  io::Report rep{{"q", to_string(r.q)}, {"q_bound", to_string(r.q_bound)}, {"orders", join(r.orders)},
                 {"period_bound", to_string(period_from_rational(pm, r.q))}};
  return report_text(rep);
}

std::string run_hp(const Options& o) {
  const auto fl = lattice_arg(o.lattice);
  const auto c = hall_petresco(io::parse_matrix(o.pair.at(0)), io::parse_matrix(o.pair.at(1)), fl);
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) out += "c" + std::to_string(i + 2) + " ; " + io::render_matrix(c[i]) + "\n";
  return out;
}

std::string render_lift(const LiftResult& res) {
  std::string out = io::render_polymap(res.lifted) + "[report]\n";
  const auto& r = res.report;
  io::Report rep{{"input_period", to_string(r.input_period)},
                 {"output_period", to_string(r.output_period)},
                 {"minimal_period", to_string(r.minimal_period)},
                 {"q", to_string(r.q)},
                 {"q_prime", to_string(r.q_prime)},
                 {"corrections", std::to_string(r.corrections.size())}};
  for (const auto& c : r.corrections) {
    std::string t;
    for (std::size_t i = 0; i < c.index.size(); ++i) t += (i ? "," : "") + std::to_string(c.index[i]);
    rep.emplace_back("correction", std::to_string(c.level) + " ; " + t + " ; " + io::render_matrix(c.value));
  }
  return out + report_text(rep);
}

std::string run_lift(const Options& o) {
  const auto fib = io::parse_fibration(io::read_file(o.fibration));
  const auto f = io::parse_polymap(io::read_file(o.polymap));
  return render_lift(lift_through_fibration(fib, f, positive(o.period, "--period")));
}

std::string run_lift_search(const Options& o) {
  if (!o.heisenberg.empty()) {
    const long n = o.heisenberg.at(0), m = o.heisenberg.at(1);
    const auto inst = heisenberg_instance(n, m);
    const auto lift = minimal_period_lift_search(inst.lattice, inst.map, {n, m});
    if (!lift) return "no exact-period lift (gcd=" + std::to_string(std::gcd(n, m)) + ")\n";
    return "lift with periods (" + std::to_string(n) + "," + std::to_string(m) + ")\n" + io::render_polymap(*lift);
  }
  if (o.lattice.empty() || o.polymap.empty() || o.periods.empty())
    fail(ErrorKind::InvalidArgument, "lift-search needs --heisenberg N M, or --lattice, --polymap and --periods");
  const auto fl = lattice_arg(o.lattice);
  const auto f = io::parse_polymap(io::read_file(o.polymap));
  const auto periods = integer_list(o.periods);
  const auto lift = minimal_period_lift_search(fl, f, periods);
  if (!lift) return "no exact-period lift\n";
  return "lift with periods (" + join(periods) + ")\n" + io::render_polymap(*lift);
}

std::string run_project(const Options& o) {
  const auto g = io::parse_polymap(io::read_file(o.polymap));
  const auto tau = io::parse_hom(io::read_file(o.tau));
  const auto freq = io::parse_frequency(io::read_file(o.freq), g.ambient());
  const auto phi = project(tau, g, freq);
  if (o.report.empty()) return io::render_table(phi.table);
  const std::string text = io::read_file(o.report);
  const auto f = io::parse_table(phi.table.group(), text);
  const auto r = obstruction_report(f, phi, o.k);
  return report_text({{"delta", io::format_double(r.delta)},
                      {"gowers", io::format_double(r.gowers)},
                      {"gowers_pullback", io::format_double(r.gowers_pullback)},
                      {"pullback_identity", r.pullback_identity ? "true" : "false"},
                      {"k", std::to_string(r.k)},
                      {"dim", std::to_string(r.dim)},
                      {"degree", std::to_string(r.degree)},
                      {"max_denominator", to_string(r.max_denominator)},
                      {"total_frequency", to_string(r.total_frequency)},
                      {"rank_preserving", r.rank_preserving ? "true" : "false"}});
}

std::string run_cubes(const Options& o) {
  if (!o.corner.empty()) return report_text({{"completion", to_string(complete_corner_integer(integer_list(o.corner), o.k))}});
  if (o.cube.empty()) fail(ErrorKind::InvalidArgument, "cubes needs --cube or --corner");
  const auto [fl, cube] = io::parse_cube(io::read_file(o.cube));
  const auto f = hk_cube_factor(cube, fl);
  io::Report rep{{"member", f.member() ? "true" : "false"}};
  if (f.witness) rep.emplace_back("witness", vertex_string(*f.witness, cube.n));
  for (const auto& c : f.factors) rep.emplace_back("factor", vertex_string(c.vertex, cube.n) + " ; " + io::render_matrix(c.element));
  return report_text(rep);
}

std::string run_zariski(const Options& o) {
  const auto fl = lattice_arg(o.lattice);
  const auto gens = io::parse_matrix_list(io::read_file(o.generators));
  const auto basis = zariski_span(fl, gens);
  io::Report rep{{"dimension", std::to_string(basis.dimension())}};
  for (const auto& x : basis.elements()) {
    std::string coords;
    for (const auto& p : basis.positions()) coords += (coords.empty() ? "" : " ") + to_string(x(p.row, p.col));
    rep.emplace_back("basis", coords);
  }
  if (!o.member.empty()) {
    const auto factors = zariski_factor(basis, io::parse_matrix(o.member));
    rep.emplace_back("member", factors ? "true" : "false");
    if (factors)
      for (const auto& f : *factors) rep.emplace_back("factor", to_string(f.exponent) + " ; " + io::render_matrix(f.gamma));
  }
  return report_text(rep);
}

int run_selfcheck(const Options& o, std::string& out) {
  int passed = 0, failed = 0;
  for (const auto& r : criteria::run_all(o.seed)) {
    out += criteria::format(r) + "\n";
    (r.pass ? passed : failed)++;
  }
  out += "passed: " + std::to_string(passed) + "\nfailed: " + std::to_string(failed) + "\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with nilsequences, filtered unipotent groups and Gowers norms"};
  app.require_subcommand(1);
  Options o;
  app.add_option("-o,--out", o.out, "Write output to this file instead of stdout");

  auto file = [](CLI::App* sub, const char* name, std::string& target, const char* help) {
    return sub->add_option(name, target, help)->check(CLI::ExistingFile);
  };

  auto* gowers = app.add_subcommand("gowers", "Gowers U^s norm of a table");
  gowers->add_option("--group", o.group, "Group such as \"[5]\" (default: the table's group: line)");
  file(gowers, "--table", o.table, "Table file")->required();
  gowers->add_option("--s", o.s, "Degree s >= 1")->check(CLI::PositiveNumber);

  auto* corr = app.add_subcommand("correlate", "E f conj(g) for two tables");
  corr->add_option("--group", o.group, "Group shared by both tables");
  corr->add_option("tables", o.tables, "Two table files")->required()->expected(2)->check(CLI::ExistingFile);

  auto* taylor = app.add_subcommand("taylor", "Taylor coefficients from grid values, or evaluation");
  file(taylor, "--polymap", o.polymap, "PolyMap file");
  taylor->add_option("--at", o.at, "Point to evaluate at, e.g. 3,1");
  taylor->add_option("--lattice", o.lattice, "Lattice file or inline text");
  file(taylor, "--values", o.values, "Grid values, lines 'x ; matrix'");
  taylor->add_option("--arity", o.arity, "Number of arguments");
  taylor->add_option("--shift", o.shift, "Coefficient a_t must lie in G_{|t|+shift}");

  auto* period = app.add_subcommand("period", "Exact periodicity modulo the lattice");
  file(period, "--polymap", o.polymap, "PolyMap file");
  file(period, "--abelian", o.abelian, "Abelian PolyMap file");
  period->add_option("--check", o.check, "Test this period instead of computing the least one");

  auto* rat = app.add_subcommand("rationality", "Rationality order of an element or a periodic map");
  rat->add_option("--lattice", o.lattice, "Lattice file or inline text");
  rat->add_option("--matrix", o.matrix, "Row-major matrix entries");
  rat->add_option("--cap", o.cap, "Give up beyond this order");
  file(rat, "--polymap", o.polymap, "PolyMap file");
  rat->add_option("--period", o.period, "Verified period of the map");

  auto* hp = app.add_subcommand("hp", "Hall-Petresco coefficients c_2..c_k");
  hp->add_option("--lattice", o.lattice, "Lattice file or inline text")->required();
  hp->add_option("matrices", o.pair, "The two matrices g and h")->required()->expected(2);

  auto* lift = app.add_subcommand("lift", "Lift a periodic map through a fibration");
  file(lift, "--fibration", o.fibration, "Fibration file")->required();
  file(lift, "--polymap", o.polymap, "PolyMap into X")->required();
  lift->add_option("--period", o.period, "Period M of the input")->required();

  auto* search = app.add_subcommand("lift-search", "Search for a lift with prescribed periods");
  search->add_option("--heisenberg", o.heisenberg, "N M: the Heisenberg instance")->expected(2)->check(CLI::PositiveNumber);
  search->add_option("--lattice", o.lattice, "Lattice file or inline text");
  file(search, "--polymap", o.polymap, "PolyMap read modulo the top band");
  search->add_option("--periods", o.periods, "Per-coordinate periods, e.g. 2,3");

  auto* proj = app.add_subcommand("project", "Projected nilsequence table, or an obstruction report");
  file(proj, "--tau", o.tau, "Homomorphism file")->required();
  file(proj, "--polymap", o.polymap, "PolyMap file")->required();
  file(proj, "--freq", o.freq, "Frequency file")->required();
  file(proj, "--report", o.report, "Table f to compare against the projection");
  proj->add_option("--k", o.k, "Report uses the U^{k+1} norm");

  auto* cubes = app.add_subcommand("cubes", "Host-Kra cube membership or corner completion");
  file(cubes, "--cube", o.cube, "Cube file");
  cubes->add_option("--corner", o.corner, "Integer corner values in vertex order");
  cubes->add_option("--k", o.k, "Degree for corner completion");

  auto* zar = app.add_subcommand("zariski", "Rational Lie algebra spanned by lattice generators");
  zar->add_option("--lattice", o.lattice, "Lattice file or inline text")->required();
  file(zar, "--generators", o.generators, "Matrices, one per line")->required();
  zar->add_option("--member", o.member, "Matrix to test and factor");

  auto* self = app.add_subcommand("selfcheck", "Run the acceptance suite");
  self->add_option("--seed", o.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string out;
  int code = 0;
  try {
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "gowers") out = run_gowers(o);
    else if (name == "correlate") out = run_correlate(o);
    else if (name == "taylor") out = run_taylor(o);
    else if (name == "period") out = run_period(o);
    else if (name == "rationality") out = run_rationality(o);
    else if (name == "hp") out = run_hp(o);
    else if (name == "lift") out = run_lift(o);
    else if (name == "lift-search") out = run_lift_search(o);
    else if (name == "project") out = run_project(o);
    else if (name == "cubes") out = run_cubes(o);
    else if (name == "zariski") out = run_zariski(o);
    else code = run_selfcheck(o, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (o.out.empty()) {
    std::cout << out;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << o.out << "\n";
      return 1;
    }
    f << out;
  }
  return code;
}
