#include "b2/cli.hpp"

#include <cmath>
#include <iostream>
#include <limits>

#include <CLI11.hpp>

namespace b2 {

namespace {

void emit_json(const RunConfig& cfg, const nlohmann::json& j) {
  const std::string text = j.dump(2) + "\n";
  if (cfg.output.empty())
    std::cout << text;
  else
    write_file(cfg.output, text);
}

nlohmann::json frame_json(const ClosureFrame& frame) {
  nlohmann::json j;
  j["lambda"] = {frame.lambda[0], frame.lambda[1], frame.lambda[2]};
  j["f"] = {frame.f.x, frame.f.y, frame.f.z};
  j["rot"] = {{frame.rot(0, 0), frame.rot(0, 1), frame.rot(0, 2)},
              {frame.rot(1, 0), frame.rot(1, 1), frame.rot(1, 2)},
              {frame.rot(2, 0), frame.rot(2, 1), frame.rot(2, 2)}};
  return j;
}

nlohmann::json shape_json(const BetaShape& s, bool ok) {
  nlohmann::json j;
  if (!ok) {
    j["branch"] = "none";
    return j;
  }
  j["branch"] = to_string(s.branch());
  switch (s.branch()) {
    case BetaBranch::Smooth:
      j["gamma"] = s.gamma();
      j["delta"] = s.delta();
      break;
    case BetaBranch::DiracSingle:
      j["mu"] = s.mu();
      break;
    case BetaBranch::DiracPair:
      j["weight_plus"] = s.weight_plus();
      break;
  }
  return j;
}

}  // namespace

int cmd_check(const RunConfig& cfg) {
  MomentState m = read_state_file(cfg.input);

  nlohmann::json out = state_to_json(m);
  bool realizable = false;
  try {
    const double margin = realizability_margin(m);
    out["margin"] = margin;
    realizable = margin >= -cfg.tol * m.e0();
  } catch (const BoundaryViolation& e) {
    out["margin"] = nullptr;
    out["boundary_violation"] = e.what();
  }
  const ClosureFrame frame = eigenframe(m);
  out.update(frame_json(frame));
  try {
    const NonnegDiagnostics d = nonneg_diagnostics(m);
    out["delta"] = d.delta;
    out["box_ok"] = d.box_ok;
    out["sigma_pos_ok"] = d.sigma_pos_ok;
    out["unsafe"] = d.unsafe;
  } catch (const B2Error&) {
    // diagnostics undefined outside the moment cone
  }
  out["realizable"] = realizable;
  emit_json(cfg, out);
  return realizable ? 0 : 2;
}

int cmd_close(const RunConfig& cfg) {
  MomentState m = read_state_file(cfg.input);

  double margin;
  try {
    margin = realizability_margin(m);
  } catch (const BoundaryViolation& e) {
    std::cerr << "close: " << e.what() << "\n";
    return 2;
  }
  if (margin < -cfg.tol * m.e0()) {
    std::cerr << "close: moments are not realizable (margin " << margin << ")\n";
    return 2;
  }

  const AlgebraicClosure ac = closure_algebraic(m);
  const Fluxes fl = assemble_fluxes(m, ac.third);

  nlohmann::json out;
  out["input"] = state_to_json(m);
  out["margin"] = margin;
  out.update(frame_json(ac.params.frame));
  out["sigma"] = ac.params.sigma;
  out["w"] = ac.params.w;
  out["shapes"] = {shape_json(ac.params.shapes[0], ac.shape_ok[0]),
                   shape_json(ac.params.shapes[1], ac.shape_ok[1]),
                   shape_json(ac.params.shapes[2], ac.shape_ok[2])};
  out["e3"] = ac.third.data();  // lexicographic 111,112,...,333
  out["flux_x"] = fl.f[0];
  out["flux_y"] = fl.f[1];
  out["flux_z"] = fl.f[2];
  out["diagnostics"] = {{"delta", ac.diag.delta},
                        {"box_ok", ac.diag.box_ok},
                        {"sigma_pos_ok", ac.diag.sigma_pos_ok},
                        {"unsafe", ac.diag.unsafe}};

  int code = 0;
  if (cfg.verify) {
    nlohmann::json v;
    const bool shapes_ok = ac.shape_ok[0] && ac.shape_ok[1] && ac.shape_ok[2];
    if (!shapes_ok) {
      v["performed"] = false;
      v["reason"] = "no per-axis ansatz shapes outside the realizable 1D set";
      code = 2;
    } else {
      const std::array<AnsatzTerm, 3> terms = {
          make_term(ac.params.w[0], ac.params.frame.rot.column(0), ac.params.shapes[0]),
          make_term(ac.params.w[1], ac.params.frame.rot.column(1), ac.params.shapes[1]),
          make_term(ac.params.w[2], ac.params.frame.rot.column(2), ac.params.shapes[2])};
      const SphericalMoments rec = spherical_moments(terms);
      const Vec9 a = m.to_vec9(), b = rec.state.to_vec9();
      double err = 0;
      for (int i = 0; i < 9; ++i) err = std::max(err, std::abs(a[i] - b[i]));
      err /= m.e0();
      v["performed"] = true;
      v["max_rel_err_analytic"] = err;
      bool any_smooth = false;
      for (const auto& t : terms)
        if (t.weight > 0 && t.shape.is_smooth()) any_smooth = true;
      if (any_smooth) {
        const SphericalMoments recq = spherical_moments_quadrature(terms, cfg.quad_order);
        const Vec9 c = recq.state.to_vec9();
        double errq = 0;
        for (int i = 0; i < 9; ++i) errq = std::max(errq, std::abs(a[i] - c[i]));
        v["max_rel_err_quadrature"] = errq / m.e0();
        v["quad_order"] = cfg.quad_order;
      }
      v["tol"] = cfg.tol;
      v["passed"] = err <= cfg.tol;
      if (err > cfg.tol) code = 2;
    }
    out["verify"] = v;
  }
  emit_json(cfg, out);
  return code;
}

int cmd_sample_nonneg(const RunConfig& cfg) {
  write_file(cfg.output, region_csv(sample_nonneg_region(cfg.grid, cfg.fgrid)));
  return 0;
}

int cmd_sample_hyp(const RunConfig& cfg) {
  write_file(cfg.output, region_csv(sample_hyperbolic_region(cfg.grid, cfg.dirs)));
  return 0;
}

std::vector<SlabSample> slab_e3_samples(int grid_n) {
  if (grid_n < 2) throw DomainError("slab grid must be >= 2");
  std::vector<SlabSample> rows;
  rows.reserve(grid_n * grid_n);
  for (int i = 0; i < grid_n; ++i) {
    const double e1 = -1.0 + 2.0 * i / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      const double e2 = double(j) / (grid_n - 1);
      SlabSample s;
      s.e1 = e1;
      s.e2 = e2;
      if (e2 >= e1 * e1 - 1e-15 && e2 <= 1.0) {
        try {
          const MomentState m = build_moments(
              1.0, {e1, 0, 0},
              Mat3::diag(e2, 0.5 * (1.0 - e2), 0.5 * (1.0 - e2)));
          const AlgebraicClosure ac = closure_algebraic(m);
          // valid only where every per-axis 1D problem is solvable: there an
          // actual distribution backs the closure and |E3| <= 1; outside, the
          // algebraic continuation has a pole curve
          if (ac.shape_ok[0] && ac.shape_ok[1] && ac.shape_ok[2]) {
            s.e3 = ac.third(0, 0, 0);
            s.valid = true;
          }
        } catch (const B2Error&) {
          s.valid = false;
        }
      }
      rows.push_back(s);
    }
  }
  return rows;
}

int cmd_slab_e3(const RunConfig& cfg) {
  write_file(cfg.output, slab_csv(slab_e3_samples(cfg.grid)));
  return 0;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"second-order beta-EQMOM moment closure toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool needs_out) {
    if (needs_out)
      sub->add_option("--out", cfg.output, "output file")->required();
    else
      sub->add_option("--out", cfg.output, "output file (default: stdout)");
  };

  CLI::App* check = app.add_subcommand("check", "realizability diagnostics of a moment state");
  check->add_option("--in", cfg.input, "input state JSON")->required();
  add_common(check, false);
  check->add_option("--tol", cfg.tol, "relative margin tolerance")
      ->default_val(1e-12)
      ->check(CLI::PositiveNumber);

  CLI::App* close = app.add_subcommand("close", "evaluate the closure for a moment state");
  close->add_option("--in", cfg.input, "input state JSON")->required();
  add_common(close, false);
  close->add_option("--quad-order", cfg.quad_order, "spherical quadrature order")
      ->default_val(64)
      ->check(CLI::Range(2, 4096));
  close->add_option("--tol", cfg.tol, "verification tolerance")
      ->default_val(1e-9)
      ->check(CLI::PositiveNumber);
  close->add_flag("--verify", cfg.verify,
                  "re-integrate the reconstructed ansatz and compare with the input");

  CLI::App* nonneg = app.add_subcommand("sample-nonneg", "map the non-negative-ansatz region");
  nonneg->add_option("--grid", cfg.grid, "barycentric subdivisions")
      ->default_val(200)
      ->check(CLI::Range(2, 100000));
  nonneg->add_option("--fgrid", cfg.fgrid, "first-moment box grid per axis")
      ->default_val(11)
      ->check(CLI::Range(2, 10000));
  add_common(nonneg, true);

  CLI::App* hyp = app.add_subcommand("sample-hyp", "map the hyperbolicity region at E1 = 0");
  hyp->add_option("--grid", cfg.grid, "barycentric subdivisions")
      ->default_val(200)
      ->check(CLI::Range(2, 100000));
  hyp->add_option("--dirs", cfg.dirs, "direction samples per node")
      ->default_val(200)
      ->check(CLI::Range(1, 1000000));
  add_common(hyp, true);

  CLI::App* slab = app.add_subcommand("slab-e3", "slab-geometry closing-moment surface");
  slab->add_option("--grid", cfg.grid, "grid points per axis")
      ->default_val(200)
      ->check(CLI::Range(2, 100000));
  add_common(slab, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (check->parsed()) { cfg.command = Command::check; return cmd_check(cfg); }
    if (close->parsed()) { cfg.command = Command::close; return cmd_close(cfg); }
    if (nonneg->parsed()) { cfg.command = Command::sample_nonneg; return cmd_sample_nonneg(cfg); }
    if (hyp->parsed()) { cfg.command = Command::sample_hyp; return cmd_sample_hyp(cfg); }
    cfg.command = Command::slab_e3;
    return cmd_slab_e3(cfg);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const B2Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace b2
