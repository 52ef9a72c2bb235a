#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "sg/configs.hpp"
#include "sg/grid.hpp"
#include "sg/io.hpp"
#include "sg/kelly.hpp"

namespace sg::cli {

using io::json;

// Exit codes: 0 pass, 1 theorem bound violated (an implementation bug, the
// statements are proved), 2 hypothesis violation or invalid parameters,
// 3 I/O or parse failure.
inline int errc_exit_code(Errc c) {
  switch (c) {
    case Errc::parse_error:
    case Errc::io_error:
      return 3;
    default:
      return 2;
  }
}

namespace detail {

struct Common {
  double tol = kDefaultTolRel;
  std::string output;
  std::string format = "json";
  bool timing = false;
};

inline void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--tol", c.tol, "relative incidence tolerance for the float backend")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--output", c.output, "write the report to this path instead of stdout");
  cmd->add_option("--format", c.format, "report format")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_flag("--timing", c.timing,
                "record wall time in the report (reports stop being byte-identical)");
}

// Flat deterministic text rendering of a report: dotted keys, one per line.
inline void render_text(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& item : j.items()) {
      render_text(item.value(), prefix.empty() ? item.key() : prefix + "." + item.key(), os);
    }
  } else {
    os << prefix << ": " << j.dump() << "\n";
  }
}

inline std::string render_report(const json& rep, const Common& c) {
  if (c.format == "text") {
    std::ostringstream os;
    render_text(rep, "", os);
    return os.str();
  }
  return io::dump(rep);
}

inline void emit(const std::string& payload, const Common& c, std::ostream& out) {
  if (c.output.empty()) {
    out << payload;
  } else {
    io::write_file(c.output, payload);
  }
}

inline double elapsed_ms(std::chrono::steady_clock::time_point t0,
                         std::chrono::steady_clock::time_point t1) {
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

// timing_ms stays null unless --timing was given, so that repeated runs of
// the same command produce byte-identical reports.
inline void set_timing(json& rep, const Common& c, double ms) {
  rep["timing_ms"] = c.timing ? json(ms) : json(nullptr);
}

inline json histogram_json(const std::map<int, int>& h) {
  json j = json::object();
  for (const auto& [count, lines] : h) j[std::to_string(count)] = lines;
  return j;
}

template <typename T>
json spanned_json(const SpannedLine<T>& l, FieldTag field, std::int64_t sqrt_m) {
  json j = json::object();
  j["line"] = io::line_to_json(l.line, field, sqrt_m);
  j["members"] = l.members;
  j["count"] = static_cast<int>(l.members.size());
  return j;
}

inline json report_head(const char* command, const std::string& digest) {
  json j = json::object();
  j["schema_version"] = 1;
  j["command"] = command;
  j["input_digest"] = digest;
  j["seed"] = nullptr;
  return j;
}

template <typename T>
void add_backend_meta(json& j, FieldTag field, std::int64_t sqrt_m, double tol_rel) {
  j["field"] = field_name(field);
  j["backend"] = scalar_traits<T>::backend_name();
  if constexpr (scalar_traits<T>::is_exact) {
    j["sqrt_m"] = sqrt_m;
    j["tol_rel"] = nullptr;
  } else {
    j["tol_rel"] = tol_rel;
  }
}

// ---- check-sg ---------------------------------------------------------------

template <typename T>
int run_check_sg(const PointSet<T>& s, const std::string& digest, const Common& c,
                 std::ostream& out) {
  json rep = report_head("check-sg", digest);
  add_backend_meta<T>(rep, s.field, s.sqrt_m, s.tol_rel);
  try {
    const auto t0 = std::chrono::steady_clock::now();
    const WitnessReport<T> wit = find_witness(s);
    const SgCheck<T> sg = check_sg_bound(s);
    const auto t1 = std::chrono::steady_clock::now();

    const bool pass = sg.pass && wit.within_bound && wit.angles_pass;
    rep["verdict"] = pass ? "pass" : "fail";
    rep["bound"] = sg.bound;
    json w = json::object();
    w["point_index"] = wit.point_index;
    w["line"] = io::line_to_json(wit.line.line, s.field, s.sqrt_m);
    w["members"] = wit.line.members;
    w["count"] = static_cast<int>(wit.line.members.size());
    w["dist_sq"] = io::scalar_to_json(wit.dist_sq, s.sqrt_m);
    w["normalized_scale_sq"] = io::scalar_to_json(wit.normalized.scale_sq, s.sqrt_m);
    json coords = json::array();
    for (const auto& z : wit.normalized.coords)
      coords.push_back(io::quat_to_json(z, s.field, s.sqrt_m));
    w["normalized_coords"] = std::move(coords);
    w["angles_pass"] = wit.angles_pass;
    w["within_bound"] = wit.within_bound;
    if (!wit.note.empty()) w["note"] = wit.note;
    rep["witness"] = std::move(w);
    rep["min_line"] = spanned_json(sg.witness, s.field, s.sqrt_m);
    rep["histogram"] = histogram_json(sg.report.histogram);
    set_timing(rep, c, elapsed_ms(t0, t1));
    emit(render_report(rep, c), c, out);
    return pass ? 0 : 1;
  } catch (const Error& e) {
    if (e.code() != Errc::hypothesis_violation && e.code() != Errc::too_few_points) throw;
    rep["verdict"] = "hypothesis-violation";
    rep["error"] = e.what();
    rep["timing_ms"] = nullptr;
    emit(render_report(rep, c), c, out);
    return 2;
  }
}

// ---- grid -------------------------------------------------------------------

inline const char* proj_status_name(ProjStatus s) {
  switch (s) {
    case ProjStatus::pass:
      return "pass";
    case ProjStatus::fail:
      return "fail";
    case ProjStatus::not_applicable:
      return "not-applicable";
  }
  return "not-applicable";
}

template <typename T>
int run_grid(const GridSpec<T>& g, const std::string& digest, const json& seed,
             const json& gen_params, const Common& c, std::ostream& out) {
  json rep = report_head("grid", digest);
  rep["seed"] = seed;
  if (!gen_params.is_null()) rep["gen_params"] = gen_params;
  add_backend_meta<T>(rep, g.field, g.sqrt_m, c.tol);
  rep["a_size"] = static_cast<int>(g.a.size());
  rep["b_size"] = static_cast<int>(g.b.size());

  const auto t0 = std::chrono::steady_clock::now();
  const GridCheck<T> check = check_grid_theorem(g, c.tol);
  const auto t1 = std::chrono::steady_clock::now();

  rep["verdict"] = check.pass ? "pass" : "fail";
  rep["witness"] = spanned_json(check.witness, g.field, g.sqrt_m);
  rep["witness_count"] = check.witness_count;
  rep["witness_vertical"] = check.witness_vertical;
  rep["histogram"] = histogram_json(check.report.histogram);

  json proj = json::object();
  proj["status"] = proj_status_name(check.projections.status);
  json pa = json::array(), pb = json::array();
  for (const auto& q : check.projections.a_proj) pa.push_back(io::quat_to_json(q, g.field, g.sqrt_m));
  for (const auto& q : check.projections.b_proj) pb.push_back(io::quat_to_json(q, g.field, g.sqrt_m));
  proj["a"] = std::move(pa);
  proj["b"] = std::move(pb);
  proj["closest_maps_to_furthest"] = check.projections.closest_maps_to_furthest;
  proj["equilateral_case"] = check.projections.equilateral_case;
  if (!check.projections.detail.empty()) proj["detail"] = check.projections.detail;
  rep["projections"] = std::move(proj);
  set_timing(rep, c, elapsed_ms(t0, t1));
  emit(render_report(rep, c), c, out);
  return check.pass ? 0 : 1;
}

// ---- enumerate --------------------------------------------------------------

template <typename T>
int run_enumerate(const PointSet<T>& s, const std::string& digest, const Common& c,
                  std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const IncidenceReport<T> rep = enumerate_lines(s);
  const auto t1 = std::chrono::steady_clock::now();

  const json hist = histogram_json(rep.histogram);
  if (c.format == "text") {
    for (const auto& item : hist.items()) out << item.key() << ": " << item.value().dump() << "\n";
  } else {
    out << io::dump(hist);
  }
  if (!c.output.empty()) {
    json full = report_head("enumerate", digest);
    add_backend_meta<T>(full, s.field, s.sqrt_m, s.tol_rel);
    full["verdict"] = "pass";
    full["histogram"] = hist;
    json lines = json::array();
    for (const auto& l : rep.lines) lines.push_back(spanned_json(l, s.field, s.sqrt_m));
    full["lines"] = std::move(lines);
    full["min_line"] = spanned_json(rep.min_line(), s.field, s.sqrt_m);
    set_timing(full, c, elapsed_ms(t0, t1));
    io::write_file(c.output, render_report(full, c));
  }
  return 0;
}

// ---- gen --------------------------------------------------------------------

struct GenOpts {
  std::string kind;
  std::string field = "C";
  bool field_given = false;
  std::string backend = "exact";
  std::int64_t sqrt_m = -1;  // -1 means "not set"
  int n = 0;
  int a = 0;
  int b = 0;
  double eps = 1e-7;
  std::uint64_t seed = 1;
};

inline int run_gen(const GenOpts& o, const Common& c, std::ostream& out) {
  const FieldTag field = field_from_name(o.field);
  const bool exact = o.backend == "exact";
  const auto require_m = [&](std::int64_t want, const char* kind) {
    if (o.sqrt_m >= 0 && o.sqrt_m != want)
      fail(Errc::invalid_argument,
           std::string(kind) + " needs sqrt_m " + std::to_string(want) + " in exact mode");
    return want;
  };
  const std::int64_t file_m = exact ? std::max<std::int64_t>(o.sqrt_m, 0) : 0;
  if (exact && !is_square_free(file_m))
    fail(Errc::invalid_argument, "--sqrt-m must be square-free and nonnegative");

  json payload;
  if (o.kind == "hesse") {
    if (!exact) fail(Errc::invalid_argument, "the Hesse configuration requires the exact backend");
    if (field != FieldTag::C) fail(Errc::invalid_argument, "the Hesse configuration lives in C^2");
    require_m(3, "hesse");
    payload = io::point_set_to_json(gen::hesse());
  } else if (o.kind == "random_points") {
    if (exact) {
      auto s = gen::random_points<QuadExt>(field, o.n, o.seed, c.tol);
      s.sqrt_m = file_m;
      payload = io::point_set_to_json(s);
    } else {
      payload = io::point_set_to_json(gen::random_points<double>(field, o.n, o.seed, c.tol));
    }
  } else if (o.kind == "random_grid") {
    if (exact) {
      auto g = gen::random_grid<QuadExt>(field, o.a, o.b, o.seed, c.tol);
      g.sqrt_m = file_m;
      payload = io::grid_spec_to_json(g);
    } else {
      payload = io::grid_spec_to_json(gen::random_grid<double>(field, o.a, o.b, o.seed, c.tol));
    }
  } else if (o.kind == "simplex4") {
    if (o.field_given && field != FieldTag::H)
      fail(Errc::invalid_argument, "simplex4 scalars are quaternions; use --field H");
    if (exact) {
      const std::int64_t m = require_m(5, "simplex4");
      payload = io::scalar_set_to_json(io::ScalarSet<QuadExt>{FieldTag::H, m, gen::simplex4<QuadExt>()});
    } else {
      payload = io::scalar_set_to_json(io::ScalarSet<double>{FieldTag::H, 0, gen::simplex4<double>()});
    }
  } else if (o.kind == "near_collinear") {
    if (exact) {
      auto s = gen::near_collinear<QuadExt>(field, o.n, o.eps, o.seed, c.tol);
      s.sqrt_m = file_m;
      payload = io::point_set_to_json(s);
    } else {
      payload = io::point_set_to_json(gen::near_collinear<double>(field, o.n, o.eps, o.seed, c.tol));
    }
  } else {
    fail(Errc::invalid_argument, "unknown generator '" + o.kind + "'");
  }
  emit(io::dump(payload), c, out);
  return 0;
}

}  // namespace detail

// Runs one sgtool invocation. args excludes the program name; all output
// goes to the supplied streams, so tests can drive the CLI in-process.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sylvester-Gallai-type incidence checks over C^2 and H^2"};
  app.name("sgtool");
  app.require_subcommand(1);

  detail::Common c_check, c_grid, c_enum, c_gen;
  std::string in_check, in_enum, in_grid, a_file, b_file;
  std::string grid_gen_kind;
  detail::GenOpts gen_opts;
  int grid_a = 0, grid_b = 0;
  std::uint64_t grid_seed = 1;
  std::string grid_field = "C", grid_backend = "float";

  CLI::App* check = app.add_subcommand("check-sg", "verify the line bound on a point set");
  check->add_option("input", in_check, "dataset file")->required();
  detail::add_common(check, c_check);

  CLI::App* grid = app.add_subcommand("grid", "verify the product-set line bound");
  grid->add_option("input", in_grid, "grid file with factors a and b");
  grid->add_option("--a-file", a_file, "scalar-set file for factor A");
  grid->add_option("--b-file", b_file, "scalar-set file for factor B");
  grid->add_option("--gen", grid_gen_kind, "generate the grid instead (random_grid)")
      ->check(CLI::IsMember({"random_grid"}));
  grid->add_option("--field", grid_field, "field for --gen")->check(CLI::IsMember({"C", "H"}));
  grid->add_option("--backend", grid_backend, "backend for --gen")
      ->check(CLI::IsMember({"exact", "float"}));
  grid->add_option("--a", grid_a, "size of factor A for --gen");
  grid->add_option("--b", grid_b, "size of factor B for --gen");
  grid->add_option("--seed", grid_seed, "seed for --gen");
  detail::add_common(grid, c_grid);

  CLI::App* enumerate = app.add_subcommand("enumerate", "print the incidence histogram");
  enumerate->add_option("input", in_enum, "dataset file")->required();
  detail::add_common(enumerate, c_enum);

  CLI::App* gen = app.add_subcommand("gen", "emit a generated dataset");
  gen->add_option("kind", gen_opts.kind,
                  "hesse | random_points | random_grid | simplex4 | near_collinear")
      ->required();
  CLI::Option* field_opt =
      gen->add_option("--field", gen_opts.field, "C or H")->check(CLI::IsMember({"C", "H"}));
  gen->add_option("--backend", gen_opts.backend, "exact or float")
      ->check(CLI::IsMember({"exact", "float"}));
  gen->add_option("--sqrt-m", gen_opts.sqrt_m, "radicand declared by the emitted exact file");
  gen->add_option("--n", gen_opts.n, "point count");
  gen->add_option("--a", gen_opts.a, "size of factor A");
  gen->add_option("--b", gen_opts.b, "size of factor B");
  gen->add_option("--eps", gen_opts.eps, "offset magnitude for near_collinear");
  gen->add_option("--seed", gen_opts.seed, "RNG seed");
  detail::add_common(gen, c_gen);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(check)) {
      const std::string text = io::read_file(in_check);
      const std::string digest = io::fnv1a64_hex(text);
      io::AnyPointSet any = io::parse_point_set(text, c_check.tol);
      return std::visit(
          [&](const auto& s) { return detail::run_check_sg(s, digest, c_check, out); }, any);
    }
    if (app.got_subcommand(enumerate)) {
      const std::string text = io::read_file(in_enum);
      const std::string digest = io::fnv1a64_hex(text);
      io::AnyPointSet any = io::parse_point_set(text, c_enum.tol);
      return std::visit(
          [&](const auto& s) { return detail::run_enumerate(s, digest, c_enum, out); }, any);
    }
    if (app.got_subcommand(grid)) {
      const bool from_files = !a_file.empty() || !b_file.empty();
      const int sources = (!in_grid.empty()) + from_files + (!grid_gen_kind.empty());
      if (sources != 1)
        fail(Errc::invalid_argument,
             "grid needs exactly one source: an input file, --a-file/--b-file, or --gen");
      if (!grid_gen_kind.empty()) {
        const FieldTag f = field_from_name(grid_field);
        json params = io::json::object();
        params["kind"] = grid_gen_kind;
        params["field"] = grid_field;
        params["backend"] = grid_backend;
        params["a"] = grid_a;
        params["b"] = grid_b;
        params["seed"] = grid_seed;
        if (grid_backend == "exact") {
          const auto g = gen::random_grid<QuadExt>(f, grid_a, grid_b, grid_seed, c_grid.tol);
          const std::string digest = io::fnv1a64_hex(io::dump(io::grid_spec_to_json(g)));
          return detail::run_grid(g, digest, json(grid_seed), params, c_grid, out);
        }
        const auto g = gen::random_grid<double>(f, grid_a, grid_b, grid_seed, c_grid.tol);
        const std::string digest = io::fnv1a64_hex(io::dump(io::grid_spec_to_json(g)));
        return detail::run_grid(g, digest, json(grid_seed), params, c_grid, out);
      }
      if (from_files) {
        if (a_file.empty() || b_file.empty())
          fail(Errc::invalid_argument, "--a-file and --b-file must be given together");
        const std::string ta = io::read_file(a_file);
        const std::string tb = io::read_file(b_file);
        const std::string digest = io::fnv1a64_hex(ta + std::string(1, '\0') + tb);
        io::AnyScalarSet sa = io::parse_scalar_set(ta);
        io::AnyScalarSet sb = io::parse_scalar_set(tb);
        return std::visit(
            [&](const auto& va, const auto& vb) -> int {
              using TA = std::decay_t<decltype(va)>;
              using TB = std::decay_t<decltype(vb)>;
              if constexpr (!std::is_same_v<TA, TB>) {
                fail(Errc::backend_mismatch, "factor files use different backends");
              } else {
                if (va.field != vb.field)
                  fail(Errc::field_mismatch, "factor files use different fields");
                if (va.sqrt_m != vb.sqrt_m)
                  fail(Errc::backend_mismatch, "factor files declare different radicands");
                const auto g = make_grid_spec(va.field, va.values, vb.values, va.sqrt_m);
                return detail::run_grid(g, digest, json(nullptr), json(nullptr), c_grid, out);
              }
            },
            sa, sb);
      }
      const std::string text = io::read_file(in_grid);
      const std::string digest = io::fnv1a64_hex(text);
      io::AnyGridSpec any = io::parse_grid_spec(text);
      return std::visit(
          [&](const auto& g) {
            return detail::run_grid(g, digest, json(nullptr), json(nullptr), c_grid, out);
          },
          any);
    }
    gen_opts.field_given = field_opt->count() > 0;
    return detail::run_gen(gen_opts, c_gen, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return errc_exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace sg::cli
