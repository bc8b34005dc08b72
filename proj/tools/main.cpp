#include <CLI11.hpp>

#include <cctype>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "fps/duality.hpp"
#include "fps/expr.hpp"
#include "fps/field.hpp"
#include "fps/json_io.hpp"
#include "fps/matrix.hpp"
#include "fps/series.hpp"

namespace {

using fps::json;

struct Common {
  std::string field = "Q";
  std::string topology = "discrete";
  std::string alphabet = "ab";
  std::string space = "monoid";
  std::string horizon;
  std::uint64_t degree = 8;
  bool alphabet_set = false;
  bool field_set = false;
};

struct Horizon {
  std::uint64_t n = 0, c = 0;
};

// "N" or "NxC"
Horizon parse_horizon(const std::string& text, std::uint64_t def_n, std::uint64_t def_c) {
  if (text.empty()) return {def_n, def_c};
  auto parse_u64 = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw fps::UsageError("malformed --horizon: " + text);
    return std::stoull(s);
  };
  auto x = text.find('x');
  if (x == std::string::npos) {
    std::uint64_t v = parse_u64(text);
    return {v, v};
  }
  return {parse_u64(text.substr(0, x)), parse_u64(text.substr(x + 1))};
}

bool identifier_symbol(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::vector<std::string> split_alphabet(const std::string& text) {
  std::vector<std::string> symbols;
  if (text.find(',') != std::string::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto comma = text.find(',', start);
      if (comma == std::string::npos) comma = text.size();
      symbols.push_back(text.substr(start, comma - start));
      start = comma + 1;
    }
  } else {
    for (char c : text) symbols.emplace_back(1, c);
  }
  for (const std::string& s : symbols)
    if (!identifier_symbol(s))
      throw fps::UsageError("alphabet symbols must be identifiers, got: \"" + s + "\"");
  return symbols;
}

fps::FieldKind resolve_field(const Common& c) {
  try {
    return fps::parse_field_name(c.field);
  } catch (const fps::InputError& e) {
    throw fps::UsageError(e.what());
  }
}

fps::IndexSpace resolve_space(const Common& c) {
  if (c.space == "naturals") {
    if (c.alphabet_set) throw fps::UsageError("--alphabet conflicts with --space naturals");
    return fps::IndexSpace::naturals();
  }
  if (c.space != "monoid") throw fps::UsageError("--space must be monoid or naturals");
  try {
    return fps::IndexSpace::free_monoid(split_alphabet(c.alphabet));
  } catch (const fps::EvalError& e) {
    throw fps::UsageError(e.what());
  }
}

fps::FieldDescriptor resolve_descriptor(const Common& c, fps::FieldKind fk) {
  if (c.topology == "krull")
    throw fps::UsageError("krull is a series-space topology; it fits the converge command");
  try {
    return fps::parse_descriptor(fps::field_name(fk) + "/" + c.topology);
  } catch (const fps::InputError& e) {
    throw fps::UsageError(e.what());
  }
}

fps::SeriesTopology resolve_series_topology(const Common& c, fps::FieldKind fk) {
  if (c.topology == "krull") return fps::SeriesTopology::krull(fk);
  return fps::SeriesTopology::product(resolve_descriptor(c, fk));
}

fps::Series eval_series(const std::string& text, const fps::ExprContext& ctx) {
  return fps::eval_expr(fps::parse_expr(text, ctx), ctx);
}

fps::Polynomial load_polynomial(const std::string& path, const fps::IndexSpace& space,
                                const Common& c) {
  fps::Polynomial p = fps::read_polynomial(fps::load_json_file(path), space);
  if (c.field_set && p.field() != resolve_field(c))
    throw fps::EvalError("record field " + fps::field_name(p.field()) +
                         " conflicts with --field " + c.field);
  return p;
}

bool looks_like_generator(const std::string& spec, std::string_view head) {
  return spec == head || spec.rfind(std::string(head) + ":", 0) == 0;
}

std::string generator_param(const std::string& spec) {
  auto colon = spec.find(':');
  return colon == std::string::npos ? std::string{} : spec.substr(colon + 1);
}

fps::RowFiniteMatrix resolve_matrix(const std::string& spec, const Common& c) {
  fps::FieldKind fk = resolve_field(c);
  if (looks_like_generator(spec, "identity"))
    return fps::RowFiniteMatrix::identity(resolve_space(c), fk);
  if (looks_like_generator(spec, "shift")) {
    std::string k = generator_param(spec);
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos)
      throw fps::UsageError("expected shift:<k>");
    return fps::RowFiniteMatrix::shift(std::stoull(k), fk);
  }
  if (looks_like_generator(spec, "diagonal")) {
    fps::ExprContext ctx{resolve_space(c), fk};
    return fps::RowFiniteMatrix::diagonal(eval_series(generator_param(spec), ctx));
  }
  if (looks_like_generator(spec, "banded")) {
    std::string w = generator_param(spec);
    if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos)
      throw fps::UsageError("expected banded:<width>");
    auto one_band = [fk](std::uint64_t, std::uint64_t) { return fps::FieldValue::one(fk); };
    return fps::RowFiniteMatrix::banded(std::stoull(w), fk, one_band);
  }
  fps::RowFiniteMatrix m = fps::read_matrix(fps::load_json_file(spec));
  if (c.field_set && m.field() != fk)
    throw fps::EvalError("record field " + fps::field_name(m.field()) +
                         " conflicts with --field " + c.field);
  return m;
}

fps::Functional resolve_functional(const std::string& spec, const fps::IndexSpace& space,
                                   const Common& c) {
  fps::FieldKind fk = resolve_field(c);
  if (looks_like_generator(spec, "pair"))
    return fps::Functional::pairing(load_polynomial(generator_param(spec), space, c));
  if (spec == "ones-on-diracs") {
    return fps::Functional::black_box(space, fk, [fk](const fps::Series& f) {
      const fps::Polynomial* p = f.as_polynomial();
      if (!p) throw fps::EvalError("ones-on-diracs answers only on polynomial embeds");
      fps::FieldValue acc = fps::FieldValue::zero(fk);
      for (const auto& [x, coeff] : p->terms()) acc = acc + coeff;
      return acc;
    });
  }
  if (looks_like_generator(spec, "projection")) {
    fps::Index x = space.parse_index(generator_param(spec));
    if (!space.contains(x)) throw fps::EvalError("projection index outside the space");
    return fps::Functional::black_box(
        space, fk, [x](const fps::Series& f) { return f.coeff(x); });
  }
  throw fps::UsageError("unknown functional: " + spec);
}

fps::SeriesFamily resolve_family(const std::string& spec, const Common& c) {
  fps::FieldKind fk = resolve_field(c);
  if (looks_like_generator(spec, "dirac-decomposition")) {
    fps::ExprContext ctx{resolve_space(c), fk};
    return fps::SeriesFamily::dirac_decomposition(eval_series(generator_param(spec), ctx));
  }
  if (looks_like_generator(spec, "alphabet")) {
    std::string ns = generator_param(spec);
    if (ns.empty() || ns.find_first_not_of("0123456789") != std::string::npos)
      throw fps::UsageError("expected alphabet:<n>");
    std::uint64_t n = std::stoull(ns);
    std::vector<std::string> symbols = split_alphabet(c.alphabet);
    if (c.space == "naturals") throw fps::EvalError("alphabet family needs a free monoid");
    if (symbols.size() < n) {
      symbols.clear();
      for (std::uint64_t i = 0; i < n; ++i)
        symbols.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i))
                                  : "x" + std::to_string(i));
    }
    return fps::SeriesFamily::alphabet_letters(fps::IndexSpace::free_monoid(std::move(symbols)),
                                               n, fk);
  }
  throw fps::UsageError("unknown family: " + spec);
}

json error_json(const char* cls, const std::string& message) {
  return json{{"status", "error"}, {"class", cls}, {"message", message}};
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

// --- subcommand handlers ---------------------------------------------

void cmd_pair(const Common& c, const std::string& poly_path, const std::string& series) {
  fps::IndexSpace space = resolve_space(c);
  fps::Polynomial p = load_polynomial(poly_path, space, c);
  fps::Series f = eval_series(series, {space, p.field()});
  emit(json{{"status", "ok"}, {"value", fps::value_text(fps::pair(p, f))}});
}

void cmd_coeff(const Common& c, const std::string& series, const std::string& at) {
  fps::IndexSpace space = resolve_space(c);
  fps::Series f = eval_series(series, {space, resolve_field(c)});
  fps::Index x = space.parse_index(at);
  emit(json{{"status", "ok"},
            {"index", fps::index_json(space, x)},
            {"value", fps::value_text(f.coeff(x))}});
}

void cmd_star_check(const Common& c, const std::string& series) {
  fps::IndexSpace space = resolve_space(c);
  fps::FieldKind fk = resolve_field(c);
  fps::Series f = eval_series(series, {space, fk});
  fps::Series fstar = fps::star(f);
  // (1 - f) . f* should be the Cauchy unit up to the degree horizon
  fps::Series one = fps::Series::unit(space, fk);
  fps::Series lhs = fps::cauchy(fps::lin(-fps::FieldValue::one(fk), f, one), fstar);
  const std::uint64_t count = space.count_up_to_length(c.degree, std::uint64_t{1} << 20);
  if (count == std::uint64_t{1} << 20)
    throw fps::EvalError("star-check horizon too large for this alphabet");
  json out{{"status", "ok"}, {"holds", true}, {"degree", c.degree}, {"words_checked", count}};
  for (std::uint64_t i = 0; i < count; ++i) {
    fps::Index w = space.at(i);
    fps::FieldValue got = lhs.coeff(w);
    fps::FieldValue want = one.coeff(w);
    if (got != want) {
      out["holds"] = false;
      out["first_mismatch"] = json{{"index", fps::index_json(space, w)},
                                   {"value", fps::scalar_text(got)}};
      break;
    }
  }
  emit(out);
}

void cmd_apply(const Common& c, const std::string& matrix, const std::string& series) {
  fps::RowFiniteMatrix m = resolve_matrix(matrix, c);
  fps::Series f = eval_series(series, {m.source(), m.field()});
  fps::Series g = fps::apply(m, f);
  Horizon h = parse_horizon(c.horizon, 256, 128);
  json coeffs = json::array();
  for (const fps::Index& y : m.target().enumerate(h.c))
    coeffs.push_back(json{{"index", fps::index_json(m.target(), y)},
                          {"coeff", fps::scalar_text(g.coeff(y))}});
  emit(json{{"status", "ok"},
            {"field", fps::field_name(m.field())},
            {"space", fps::space_json(m.target())},
            {"coefficients", std::move(coeffs)}});
}

void cmd_compose(const Common& c, const std::string& left, const std::string& right) {
  fps::RowFiniteMatrix n = resolve_matrix(left, c);
  fps::RowFiniteMatrix m = resolve_matrix(right, c);
  fps::RowFiniteMatrix nm = fps::compose(n, m);
  Horizon h = parse_horizon(c.horizon, 256, 128);
  emit(json{{"status", "ok"},
            {"matrix", fps::matrix_json(nm, nm.target().enumerate(h.c))}});
}

void cmd_extract_matrix(const Common& c, const std::string& op_spec) {
  fps::RowFiniteMatrix m = resolve_matrix(op_spec, c);
  auto op = [&m](const fps::Series& f) { return fps::apply(m, f); };
  Horizon h = parse_horizon(c.horizon, 256, 128);
  fps::MatrixProbe probe =
      fps::extract_matrix(op, m.source(), m.target(), m.field(), h.n, h.c);
  json rows = json::array();
  for (const fps::RowProbeReport& r : probe.rows)
    rows.push_back(json{{"y", fps::index_json(m.target(), r.row)},
                        {"detected", r.detected},
                        {"exhausted", r.exhausted}});
  std::vector<fps::Index> ys = m.target().enumerate(h.n);
  emit(json{{"status", "ok"},
            {"matrix", fps::matrix_json(probe.matrix, ys)},
            {"rows", std::move(rows)}});
}

void cmd_dual_probe(const Common& c, const std::string& functional) {
  fps::IndexSpace space = resolve_space(c);
  fps::Functional ell = resolve_functional(functional, space, c);
  Horizon h = parse_horizon(c.horizon, 256, 128);
  fps::DualProbe dp = fps::extract_poly(ell, h.n);
  emit(json{{"status", "ok"},
            {"polynomial", fps::polynomial_json(dp.poly)},
            {"probed", dp.report.probed},
            {"support", dp.poly.terms().size()},
            {"exhausted", dp.report.exhausted}});
}

void cmd_extend(const Common& c, const std::string& functional, const std::string& series) {
  fps::IndexSpace space = resolve_space(c);
  fps::FieldKind fk = resolve_field(c);
  fps::Functional ell = resolve_functional(functional, space, c);
  fps::Series f = eval_series(series, {space, fk});
  fps::FieldDescriptor d = resolve_descriptor(c, fk);
  Horizon h = parse_horizon(c.horizon, 256, 128);
  fps::ExtensionResult r = fps::complete_extend(ell, f, h.c, d);
  emit(json{{"status", "ok"},
            {"value", fps::value_text(r.value)},
            {"verdict", fps::to_string(r.status)},
            {"terms", r.terms},
            {"active", r.active}});
}

void cmd_converge(const Common& c, const std::string& family) {
  fps::SeriesFamily fam = resolve_family(family, c);
  fps::SeriesTopology top = resolve_series_topology(c, fam.field());
  Horizon h = parse_horizon(c.horizon, 256, 128);
  fps::FamilySum fs = fps::sum_family(fam, top, h.n, h.c);
  const fps::SummabilityVerdict& v = fs.verdict;
  json offenders = json::array();
  for (const fps::CoordinateReport& r : v.offenders)
    offenders.push_back(
        json{{"index", fps::index_json(fam.space(), r.coord)},
             {"state", r.state == fps::CoordinateReport::State::Divergent ? "divergent"
                                                                          : "undecided"},
             {"active", r.active}});
  json out{{"status", "ok"},
           {"verdict", fps::to_string(v.status)},
           {"members", v.members_probed},
           {"coords", v.coords_probed},
           {"stabilized", v.stabilized},
           {"offenders", std::move(offenders)}};
  if (v.krull_offender) {
    out["krull_offender"] = *v.krull_offender;
    out["krull_order"] = *v.krull_order;
  }
  json prefix = json::array();
  for (const fps::Index& x : fam.space().enumerate(std::min<std::uint64_t>(h.c, 16)))
    prefix.push_back(json{{"index", fps::index_json(fam.space(), x)},
                          {"coeff", fps::scalar_text(fs.sum.coeff(x))}});
  out["sum_prefix"] = std::move(prefix);
  emit(out);
}

void cmd_modulus(const Common& c, const std::string& poly_path) {
  fps::IndexSpace space = resolve_space(c);
  fps::Polynomial p = load_polynomial(poly_path, space, c);
  fps::FieldDescriptor d = resolve_descriptor(c, p.field());
  fps::ContinuityModulus cm = fps::continuity_modulus(p, d);
  json out{{"status", "ok"}};
  switch (cm.topology) {
    case fps::TopologyKind::Archimedean:
      out["topology"] = "arch";
      out["lipschitz"] = cm.lipschitz;
      break;
    case fps::TopologyKind::Padic:
    case fps::TopologyKind::Discrete: {
      out["topology"] = cm.topology == fps::TopologyKind::Padic ? "padic" : "discrete";
      json support = json::array();
      for (const fps::Index& x : cm.control_support)
        support.push_back(fps::index_json(space, x));
      out["control_support"] = std::move(support);
      break;
    }
    case fps::TopologyKind::Indiscrete:
      break;  // rejected earlier
  }
  emit(out);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--field", c.field, "coefficient field: Q, F<p>, R64")
      ->each([&c](const std::string&) { c.field_set = true; });
  sub->add_option("--topology", c.topology,
                  "discrete | arch:<eps> | padic:<p>:<k> | indiscrete | krull");
  sub->add_option("--alphabet", c.alphabet,
                  "monoid alphabet: one char per symbol, or comma-separated")
      ->each([&c](const std::string&) { c.alphabet_set = true; });
  sub->add_option("--space", c.space, "index space: monoid | naturals");
  sub->add_option("--horizon", c.horizon, "probe horizon: N or NxC");
  sub->add_option("--degree", c.degree, "word-length bound for star-check");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"formal series, dual pairings, and row-finite operators"};
  app.require_subcommand(1);

  Common c;
  std::string poly_path, series, at, matrix, left, right, functional, family, op_spec;

  CLI::App* pair = app.add_subcommand("pair", "pair a polynomial with a series");
  add_common(pair, c);
  pair->add_option("--poly", poly_path, "polynomial record file")->required();
  pair->add_option("--series", series, "series expression")->required();
  pair->callback([&] { cmd_pair(c, poly_path, series); });

  CLI::App* coeff = app.add_subcommand("coeff", "read one series coefficient");
  add_common(coeff, c);
  coeff->add_option("--series", series, "series expression")->required();
  coeff->add_option("--at", at, "index literal")->required();
  coeff->callback([&] { cmd_coeff(c, series, at); });

  CLI::App* star = app.add_subcommand("star-check", "verify (1 - f) . f* = 1 up to a degree");
  add_common(star, c);
  star->add_option("--series", series, "series expression")->required();
  star->callback([&] { cmd_star_check(c, series); });

  CLI::App* ap = app.add_subcommand("apply", "apply a row-finite matrix to a series");
  add_common(ap, c);
  ap->add_option("--matrix", matrix, "matrix record file or generator")->required();
  ap->add_option("--series", series, "series expression")->required();
  ap->callback([&] { cmd_apply(c, matrix, series); });

  CLI::App* comp = app.add_subcommand("compose", "compose two matrices (right acts first)");
  add_common(comp, c);
  comp->add_option("--left", left, "outer matrix")->required();
  comp->add_option("--right", right, "inner matrix")->required();
  comp->callback([&] { cmd_compose(c, left, right); });

  CLI::App* exm = app.add_subcommand("extract-matrix", "probe an operator into a matrix");
  add_common(exm, c);
  exm->add_option("--operator", op_spec, "matrix record file or generator")->required();
  exm->callback([&] { cmd_extract_matrix(c, op_spec); });

  CLI::App* dp = app.add_subcommand("dual-probe", "extract a polynomial from a functional");
  add_common(dp, c);
  dp->add_option("--functional", functional,
                 "pair:<poly-file> | ones-on-diracs | projection:<index>")
      ->required();
  dp->callback([&] { cmd_dual_probe(c, functional); });

  CLI::App* ext = app.add_subcommand("extend", "extend a functional along coordinate limits");
  add_common(ext, c);
  ext->add_option("--functional", functional, "functional spec")->required();
  ext->add_option("--series", series, "series expression")->required();
  ext->callback([&] { cmd_extend(c, functional, series); });

  CLI::App* conv = app.add_subcommand("converge", "summability verdict for a series family");
  add_common(conv, c);
  conv->add_option("--family", family, "dirac-decomposition:<expr> | alphabet:<n>")->required();
  conv->callback([&] { cmd_converge(c, family); });

  CLI::App* mod = app.add_subcommand("modulus", "continuity witness for a pairing");
  add_common(mod, c);
  mod->add_option("--poly", poly_path, "polynomial record file")->required();
  mod->callback([&] { cmd_modulus(c, poly_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit(error_json("usage", e.what()));
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const fps::UsageError& e) {
    emit(error_json("usage", e.what()));
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const fps::InputError& e) {
    emit(error_json("input", e.what()));
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const fps::EvalError& e) {
    emit(error_json("evaluation", e.what()));
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    emit(error_json("evaluation", e.what()));
    std::cerr << e.what() << "\n";
    return 3;
  }
  return 0;
}
