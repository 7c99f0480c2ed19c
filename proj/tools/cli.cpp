#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>

#include "output.hpp"
#include "ptdarboux/darboux.hpp"
#include "ptdarboux/errors.hpp"
#include "ptdarboux/numerics.hpp"

namespace ptdarboux::cli {

using scarf2::Branch;
using scarf2::Model;
using scarf2::PotentialParams;
using scarf2::Regime;

namespace {

std::vector<double> sample_points(const RunConfig& c) {
  std::vector<double> xs;
  const double last = c.samples - 1;
  // two-sided form: a range symmetric about 0 gives samples that are exact negatives
  for (int i = 0; i < c.samples; ++i) xs.push_back(c.x_min * ((last - i) / last) + c.x_max * (i / last));
  return xs;
}

std::string branch_name(Branch b) { return std::string(scarf2::to_string(b)); }

Json level_json(const scarf2::SpectrumEntry& e) {
  return Json{{"n", e.n}, {"branch", branch_name(e.branch)}, {"energy", complex_json(e.energy)}};
}

std::string level_text(const scarf2::SpectrumEntry& e) {
  return std::to_string(e.n) + " " + branch_name(e.branch) + " " + num(e.energy.real()) + " " + num(e.energy.imag());
}

std::vector<Complex> energies(const std::vector<scarf2::SpectrumEntry>& levels) {
  std::vector<Complex> out;
  for (const auto& e : levels) out.push_back(e.energy);
  return out;
}

}  // namespace

Complex parse_coupling(const std::string& text) {
  static const std::regex number(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
  static const std::regex imaginary(R"(([+-]?)((\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)?i)");
  static const std::regex both(R"(([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([+-])((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)");
  std::smatch m;
  double re = 0.0, im = 0.0;
  if (std::regex_match(text, number)) {
    re = std::stod(text);
  } else if (std::regex_match(text, m, imaginary)) {
    im = m[2].matched ? std::stod(m[2].str()) : 1.0;
    if (m[1].str() == "-") im = -im;
  } else if (std::regex_match(text, m, both)) {
    re = std::stod(m[1].str());
    im = m[3].matched ? std::stod(m[3].str()) : 1.0;
    if (m[2].str() == "-") im = -im;
  } else {
    throw ParameterError("cannot parse v2 = '" + text + "' (expected a real number or an a+bi literal)");
  }
  if (re != 0.0 && im != 0.0)
    throw ParameterError("v2 must be purely real or purely imaginary (mixed v2 breaks PT invariance)");
  return {re, im};
}

void validate(const RunConfig& c) {
  PotentialParams(c.v1, c.v2);
  if (c.m < 0) throw ParameterError("m must be nonnegative");
  if (c.samples < 2) throw ParameterError("samples must be at least 2");
  if (!(c.x_max > c.x_min)) throw ParameterError("x-max must exceed x-min");
  if (c.grid_n && (*c.grid_n < 3 || *c.grid_n % 2 == 0)) throw ParameterError("grid-n must be odd and at least 3");
  if (c.grid_l && !(*c.grid_l > 0.0)) throw ParameterError("grid-l must be positive");
}

std::pair<double, int> grid_for(const RunConfig& c, Regime regime) {
  const bool broken = regime == Regime::BrokenPT;
  return {c.grid_l.value_or(broken ? 40.0 : 12.0), c.grid_n.value_or(broken ? 1601 : 1201)};
}

int cmd_classify(const RunConfig& c, std::ostream& out) {
  const PotentialParams params(c.v1, c.v2);
  const Regime regime = scarf2::classify(params);
  std::optional<scarf2::SpectralParams> sp;
  if (regime != Regime::RealPotential) sp = scarf2::derive_params(params);

  if (c.format == Format::Json) {
    Json j{{"command", "classify"}, {"v1", c.v1}, {"v2", complex_json(c.v2)}, {"regime", scarf2::to_string(regime)}};
    if (sp) {
      j["t"] = sp->t;
      j["s"] = sp->s;
      j["p"] = complex_json(sp->p);
      j["q_plus"] = complex_json(sp->q_plus);
      j["q_minus"] = complex_json(sp->q_minus);
      j["n_max"] = sp->n_max;
    } else {
      for (const char* k : {"t", "s", "p", "q_plus", "q_minus", "n_max"}) j[k] = nullptr;
    }
    write_json(out, j);
    return kSuccess;
  }
  std::vector<std::string> row{std::string(scarf2::to_string(regime))};
  if (sp) {
    for (double v : {sp->t, sp->s, sp->p.real(), sp->p.imag(), sp->q_plus.real(), sp->q_plus.imag(),
                     sp->q_minus.real(), sp->q_minus.imag()})
      row.push_back(num(v));
    row.push_back(std::to_string(sp->n_max));
  } else {
    row.resize(10);
  }
  write_csv(out, {"regime", "t", "s", "p_re", "p_im", "q_plus_re", "q_plus_im", "q_minus_re", "q_minus_im", "n_max"},
            {row});
  return kSuccess;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
  const Model model(PotentialParams(c.v1, c.v2));
  const auto levels = scarf2::spectrum(model.spectral);

  std::vector<std::optional<numerics::Match>> found(levels.size());
  int spurious = 0;
  const auto [half_width, n_points] = grid_for(c, model.regime());
  if (c.numeric) {
    const auto fd = numerics::bound_spectrum(model.potential_function(), numerics::Grid(half_width, n_points));
    const auto analytic = energies(levels);
    const auto report = numerics::match_spectra(analytic, fd, 0.1);
    for (const auto& match : report.matches)
      for (std::size_t i = 0; i < levels.size(); ++i)
        if (analytic[i] == match.analytic && !found[i]) {
          found[i] = match;
          break;
        }
    spurious = report.spurious;
  }

  if (c.format == Format::Json) {
    Json j{{"command", "spectrum"}, {"regime", scarf2::to_string(model.regime())}, {"levels", Json::array()}};
    for (std::size_t i = 0; i < levels.size(); ++i) {
      Json row = level_json(levels[i]);
      if (c.numeric) {
        row["numeric"] = found[i] ? complex_json(found[i]->numeric) : Json(nullptr);
        row["gap"] = found[i] ? Json(found[i]->gap) : Json(nullptr);
      }
      j["levels"].push_back(row);
    }
    if (c.numeric) {
      j["grid"] = Json{{"half_width", half_width}, {"n_points", n_points}};
      j["unassigned_numeric"] = spurious;
    }
    write_json(out, j);
    return kSuccess;
  }
  std::vector<std::string> header{"n", "branch", "energy_re", "energy_im"};
  if (c.numeric) header.insert(header.end(), {"numeric_re", "numeric_im", "gap"});
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    std::vector<std::string> r{std::to_string(levels[i].n), branch_name(levels[i].branch),
                               num(levels[i].energy.real()), num(levels[i].energy.imag())};
    if (c.numeric) {
      if (found[i])
        r.insert(r.end(), {num(found[i]->numeric.real()), num(found[i]->numeric.imag()), num(found[i]->gap)});
      else
        r.insert(r.end(), {"", "", ""});
    }
    rows.push_back(r);
  }
  write_csv(out, header, rows);
  return kSuccess;
}

int cmd_darboux(const RunConfig& c, std::ostream& out) {
  const Model model(PotentialParams(c.v1, c.v2));
  const Branch b = model.resolve(c.branch);
  const auto seed = darboux::make_seed(model, c.m, b);
  const auto partner = darboux::partner_potential(model, seed);
  const scarf2::SpectrumEntry deleted{c.m, b, model.energy(c.m, b)};

  std::vector<scarf2::SpectrumEntry> partner_levels, intertwined;
  if (model.regime() == Regime::BrokenPT) {
    auto report = darboux::broken_partner_report(model, c.m, b);
    partner_levels = report.expected_spectrum;
    intertwined = report.intertwined_spectrum;
  } else {
    for (const auto& e : scarf2::spectrum(model.spectral))
      if (e.n != c.m) partner_levels.push_back(e);
  }

  std::vector<Complex> fd_levels;
  const auto [half_width, n_points] = grid_for(c, model.regime());
  if (c.numeric) fd_levels = numerics::bound_spectrum(partner.function(), numerics::Grid(half_width, n_points));

  // comparator: printed closed forms for m <= 2 (unbroken) and the broken ground-state form
  const bool has_closed = (model.regime() == Regime::UnbrokenPT && c.m <= 2) ||
                          (model.regime() == Regime::BrokenPT && c.m == 0 && b == Branch::Minus);
  auto closed = [&](double x) {
    return model.regime() == Regime::UnbrokenPT ? darboux::closed_form_partner(model.params, model.spectral, c.m, x)
                                                : darboux::closed_form_broken_partner(model.spectral, x);
  };

  const auto xs = sample_points(c);
  double max_dev = 0.0;
  std::vector<Complex> u(xs.size()), cf(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    u[i] = partner.u(xs[i]);
    if (has_closed) {
      cf[i] = closed(xs[i]);
      max_dev = std::max(max_dev, std::abs(cf[i] - u[i]));
    }
  }

  if (c.format == Format::Json) {
    Json j{{"command", "darboux"},
           {"regime", scarf2::to_string(model.regime())},
           {"m", c.m},
           {"branch", branch_name(b)},
           {"beta_m", complex_json(partner.beta_m())},
           {"deleted_level", level_json(deleted)},
           {"partner_spectrum", Json::array()}};
    for (const auto& e : partner_levels) j["partner_spectrum"].push_back(level_json(e));
    if (model.regime() == Regime::BrokenPT) {
      j["intertwined_levels"] = Json::array();
      for (const auto& e : intertwined) j["intertwined_levels"].push_back(level_json(e));
    }
    if (c.numeric) {
      j["numeric_partner_levels"] = Json::array();
      for (Complex e : fd_levels) j["numeric_partner_levels"].push_back(complex_json(e));
    }
    j["comparator_max_deviation"] = has_closed ? Json(max_dev) : Json(nullptr);
    j["samples"] = Json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      Json row{{"x", xs[i]}, {"u", complex_json(u[i])}};
      row["closed_form"] = has_closed ? complex_json(cf[i]) : Json(nullptr);
      row["deviation"] = has_closed ? Json(std::abs(cf[i] - u[i])) : Json(nullptr);
      j["samples"].push_back(row);
    }
    write_json(out, j);
    return kSuccess;
  }

  out << "# m: " << c.m << '\n';
  out << "# branch: " << branch_name(b) << '\n';
  out << "# beta_m: " << num(partner.beta_m().real()) << ' ' << num(partner.beta_m().imag()) << '\n';
  out << "# deleted_level: " << level_text(deleted) << '\n';
  for (const auto& e : partner_levels) out << "# partner_level: " << level_text(e) << '\n';
  for (const auto& e : intertwined) out << "# intertwined_level: " << level_text(e) << '\n';
  for (Complex e : fd_levels) out << "# numeric_partner_level: " << num(e.real()) << ' ' << num(e.imag()) << '\n';
  if (has_closed) out << "# comparator_max_deviation: " << num(max_dev) << '\n';

  std::vector<std::string> header{"x", "u_re", "u_im"};
  if (has_closed) header.insert(header.end(), {"closed_re", "closed_im", "deviation"});
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<std::string> r{num(xs[i]), num(u[i].real()), num(u[i].imag())};
    if (has_closed) r.insert(r.end(), {num(cf[i].real()), num(cf[i].imag()), num(std::abs(cf[i] - u[i]))});
    rows.push_back(r);
  }
  write_csv(out, header, rows);
  return kSuccess;
}

int cmd_figures(const RunConfig& c, std::ostream& out) {
  const Model model(PotentialParams(c.v1, c.v2));
  if (model.regime() != Regime::UnbrokenPT || model.spectral.n_max < 3)
    throw DomainError("figures need the unbroken regime with at least three levels (seeds m = 0, 1, 2)");
  std::vector<PotentialFunction> columns{model.potential_function()};
  for (int m = 0; m <= 2; ++m)
    columns.push_back(darboux::partner_potential(model, darboux::make_seed(model, m)).function());
  const std::vector<std::string> names{"x", "V", "U0", "U1", "U2"};

  const auto xs = sample_points(c);
  std::vector<std::vector<Complex>> values(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (const auto& f : columns) values[i].push_back(f(xs[i]));

  const std::filesystem::path dir = c.out.empty() ? "." : c.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  const char* ext = c.format == Format::Json ? ".json" : ".csv";

  for (int part = 0; part < 2; ++part) {
    const auto path = dir / (std::string(part == 0 ? "fig1" : "fig2") + ext);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
    auto pick = [part](Complex z) { return part == 0 ? z.real() : z.imag(); };
    if (c.format == Format::Json) {
      Json rows = Json::array();
      for (std::size_t i = 0; i < xs.size(); ++i) {
        Json r{{"x", unsigned_zero(xs[i])}};
        for (std::size_t k = 0; k < columns.size(); ++k) r[names[k + 1]] = unsigned_zero(pick(values[i][k]));
        rows.push_back(r);
      }
      write_json(file, rows);
    } else {
      std::vector<std::vector<std::string>> rows;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        std::vector<std::string> r{num(xs[i])};
        for (Complex z : values[i]) r.push_back(num(pick(z)));
        rows.push_back(r);
      }
      write_csv(file, names, rows);
    }
    file.close();
    if (!file) throw std::runtime_error("failed writing " + path.string());
    out << path.string() << '\n';
  }
  return kSuccess;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"PT-symmetric Scarf II Darboux partners with a finite-difference cross-check", "ptdarboux"};
  app.require_subcommand(1);

  RunConfig c;
  std::string v2_text = "18", branch_text = "minus", format_text = "csv";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--v1", c.v1, "sech^2 strength (> 0)");
    sub->add_option("--v2", v2_text, "sech tanh strength, real or a+bi literal");
    sub->add_option("--format", format_text, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", c.out, "output file (figures: directory)");
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid-l", c.grid_l, "finite-difference half width");
    sub->add_option("--grid-n", c.grid_n, "finite-difference node count (odd)");
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--m", c.m, "seed level");
    sub->add_option("--branch", branch_text, "seed branch in the broken regime")
        ->check(CLI::IsMember({"plus", "minus"}));
  };
  auto add_range = [&](CLI::App* sub) {
    sub->add_option("--x-min", c.x_min, "first sample");
    sub->add_option("--x-max", c.x_max, "last sample");
    sub->add_option("--samples", c.samples, "sample count");
  };

  auto* classify = app.add_subcommand("classify", "regime and derived parameters");
  add_common(classify);
  auto* spectrum = app.add_subcommand("spectrum", "analytic energies, optionally matched to the FD spectrum");
  add_common(spectrum);
  add_grid(spectrum);
  spectrum->add_flag("--numeric", c.numeric, "append finite-difference eigenvalues and gaps");
  auto* darboux = app.add_subcommand("darboux", "partner potential table, deleted level and partner spectrum");
  add_common(darboux);
  add_seed(darboux);
  add_range(darboux);
  add_grid(darboux);
  darboux->add_flag("--numeric", c.numeric, "append finite-difference partner levels");
  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
  add_common(verify_cmd);
  add_seed(verify_cmd);
  add_grid(verify_cmd);
  auto* figures = app.add_subcommand("figures", "real (fig1) and imaginary (fig2) parts of V, U0, U1, U2");
  add_common(figures);
  add_range(figures);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  try {
    c.v2 = parse_coupling(v2_text);
    c.branch = branch_text == "plus" ? scarf2::Branch::Plus : scarf2::Branch::Minus;
    c.format = format_text == "json" ? Format::Json : Format::Csv;
    validate(c);

    std::ofstream file;
    std::ostream* sink = &out;
    const bool to_file = !c.out.empty() && !figures->parsed();
    if (to_file) {
      file.open(c.out, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open " + c.out + " for writing");
      sink = &file;
    }
    int code = kSuccess;
    if (classify->parsed()) code = cmd_classify(c, *sink);
    if (spectrum->parsed()) code = cmd_spectrum(c, *sink);
    if (darboux->parsed()) code = cmd_darboux(c, *sink);
    if (verify_cmd->parsed()) code = cmd_verify(c, *sink);
    if (figures->parsed()) code = cmd_figures(c, *sink);
    if (to_file) {
      file.close();
      if (!file) throw std::runtime_error("failed writing " + c.out);
    }
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace ptdarboux::cli
