#pragma once

// Command-line driver: builds an instance from flags, runs the selected
// verification suites and emits a deterministic JSON or markdown report.
// Exit codes: 0 when every executed check passes or is explicitly unknown /
// unsupported, 1 on any failed check, 2 on invalid configuration.

#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hopfrep/algebra.hpp"
#include "hopfrep/blocks.hpp"
#include "hopfrep/hopf.hpp"
#include "hopfrep/radext.hpp"
#include "hopfrep/report.hpp"
#include "hopfrep/reps.hpp"

namespace hopfrep::cli {

struct RunConfig {
  std::uint32_t p = 0, s = 1, t = 1;
  std::string lambda = "0", mu = "0";
  std::string format = "md";
  std::uint64_t seed = 1;
  std::string command = "report";
  std::int64_t tensor_i = -1, tensor_j = -1;
};

// Lazily shared intermediate results across the suites of one run.
struct Context {
  AlgPtr alg;
  std::uint64_t seed = 1;
  std::optional<std::vector<std::pair<SimpleLabel, Module>>> simples_;
  std::optional<RadicalInfo> rad_;
  std::optional<std::vector<Block>> blocks_;
  std::optional<SymmetricVerdict> sym_;
  std::optional<Module> reg_;

  const std::vector<std::pair<SimpleLabel, Module>>& simples() {
    if (!simples_) simples_ = simple_modules(alg);
    return *simples_;
  }
  const RadicalInfo& rad() {
    if (!rad_) rad_ = jacobson_radical(alg, simples());
    return *rad_;
  }
  const std::vector<Block>& blocks() {
    if (!blocks_) blocks_ = all_blocks(alg);
    return *blocks_;
  }
  const SymmetricVerdict& sym() {
    if (!sym_) sym_ = symmetric_verdict(alg);
    return *sym_;
  }
  const Module& reg() {
    if (!reg_) reg_ = regular_module(alg);
    return *reg_;
  }
};

inline Report renamed(const Report& rep, const std::string& family) {
  Report out;
  for (auto c : rep.checks) {
    auto slash = c.name.find('/');
    c.name = family + "/" + (slash == std::string::npos ? c.name : c.name.substr(slash + 1));
    out.checks.push_back(std::move(c));
  }
  return out;
}

inline Report guarded(const std::string& name, const std::function<Report()>& body) {
  try {
    return body();
  } catch (const UnsupportedParameterRegion& e) {
    Report rep;
    rep.add_status(name + "/unsupported", Status::unsupported, e.what(),
                   "construction available", "outside the treated parameter region");
    return rep;
  } catch (const std::exception& e) {
    Report rep;
    rep.add(name + "/error", false, e.what(), "no error", "");
    return rep;
  }
}

inline Report cmd_verify_algebra(Context& ctx) {
  return guarded("algebra", [&] {
    Report rep;
    const auto& sp = ctx.alg->spec();
    std::size_t want = expected_block_dim(sp) * sp.t;
    rep.add("algebra/dimension", ctx.alg->dim() == want, std::to_string(ctx.alg->dim()),
            std::to_string(want),
            ctx.alg->char2() ? "dim H = 2^{s+4} t" : "dim H = p^{s+2} t");
    rep.add("algebra/relations", true, "verified at construction", "all defining relations",
            "the rewriting operators satisfy the presentation");
    rep.merge(verify_identities(ctx.alg));
    AssocMode mode = ctx.alg->dim() <= 100 ? AssocMode::full : AssocMode::sampled;
    rep.merge(verify_associativity(ctx.alg, mode, ctx.seed));
    return rep;
  });
}

inline Report cmd_verify_hopf(Context& ctx) {
  return guarded("hopf", [&] { return verify_hopf_axioms(ctx.alg); });
}

inline Report cmd_integrals(Context& ctx) {
  return guarded("integrals", [&] {
    Report rep;
    const auto& sv = ctx.sym();
    rep.add("integrals/left_dim", sv.left.dim() == 1, std::to_string(sv.left.dim()), "1",
            "the left integral space is one-dimensional");
    rep.add("integrals/right_dim", sv.right.dim() == 1, std::to_string(sv.right.dim()), "1",
            "the right integral space is one-dimensional");
    Element tau = canonical_integral(ctx.alg);
    bool span_ok = sv.left.contains(tau.c);
    rep.add("integrals/canonical_span", span_ok, span_ok ? "contained" : "outside", "contained",
            ctx.alg->char2() ? "(sum_i g^i) abab^3 spans the integrals"
                             : "(sum_i g^i) a^{p-1} b^{p-1} spans the integrals");
    rep.merge(sv.report);
    return rep;
  });
}

inline Report cmd_blocks(Context& ctx) {
  return guarded("blocks", [&] {
    Report rep = verify_block_decomposition(ctx.alg, ctx.blocks());
    return rep;
  });
}

inline Report cmd_simples(Context& ctx) {
  return guarded("simples", [&] {
    Report rep;
    const auto& simples = ctx.simples();
    const auto& F = ctx.alg->field();
    const auto& sp = ctx.alg->spec();
    std::string dims;
    for (const auto& [label, mod] : simples)
      dims += (dims.empty() ? "" : ",") + std::to_string(mod.d);
    std::string want_dims;
    if (sp.t == 1)
      want_dims = "1";
    else if (ctx.alg->char2() || F->is_zero(sp.lambda))
      for (std::uint32_t i = 0; i < sp.t; ++i) want_dims += (i ? ",1" : "1");
    else
      for (std::uint32_t i = 0; i < sp.t; ++i)
        want_dims += (i ? "," : "") + std::to_string(i == 0 ? 1 : sp.p);
    rep.add("simples/dims", dims == want_dims, dims, want_dims,
            "census dimensions per parameter region");
    bool ends = true;
    for (const auto& [label, mod] : simples) ends = ends && end_dim(mod) == 1;
    rep.add("simples/end_dims", ends, ends ? "all 1" : "larger", "all 1",
            "every simple is absolutely irreducible");
    bool socs = true;
    for (const auto& [label, mod] : simples) {
      SocleResult s = socle(mod, ctx.rad().jac, simples);
      socs = socs && s.soc.dim() == mod.d;
    }
    rep.add("simples/socle_full", socs, socs ? "soc = module" : "proper socle", "soc = module",
            "the radical annihilates each simple");
    if (!ctx.alg->char2() && F->is_zero(sp.lambda)) {
      std::string bs;
      Scalar root = F->pth_root(sp.mu);
      bool ok = true;
      for (const auto& [label, mod] : simples) {
        Scalar want = F->mul(root, F->sub(F->one(), F->pow(F->xi(), label.index)));
        ok = ok && mod.B.at(0, 0) == want;
        bs += (bs.empty() ? "" : ",") + F->str(mod.B.at(0, 0));
      }
      rep.add("simples/b_eigenvalues", ok, bs, "mu^{1/p}(1 - xi^i)",
              "b acts on T_i by mu^{1/p}(1 - xi^i)");
    }
    return rep;
  });
}

inline Report cmd_radical(Context& ctx) {
  return guarded("radical", [&] {
    Report rep = ctx.rad().cert;
    rep.add("radical/dim", true, std::to_string(ctx.rad().jac.dim()),
            std::to_string(ctx.rad().jac.dim()), "dim J = dim H - sum (dim S)^2");
    for (const auto& blk : ctx.blocks()) {
      Subspace jb = block_radical(ctx.alg, ctx.rad().jac, blk);
      RadicalFiltration filt = radical_powers(ctx.alg, jb, blk.index);
      std::string layers;
      for (const auto& s : filt.chain) layers += (layers.empty() ? "" : ",") +
                                                 std::to_string(s.dim());
      bool nil = filt.chain.back().dim() == 0;
      rep.add("radical/block" + std::to_string(blk.index) + "_chain", nil, layers,
              "strictly decreasing to 0", "the block radical is nilpotent");
    }
    return rep;
  });
}

inline Report cmd_projectives(Context& ctx) {
  Report rep;
  for (const auto& blk : ctx.blocks()) {
    std::string fam = "cover_S" + std::to_string(blk.index);
    rep.merge(guarded(fam, [&] {
      ProjectiveCover cover =
          projective_cover(ctx.alg, ctx.simples(), ctx.rad().jac, blk, ctx.reg());
      return renamed(cover.cert, fam);
    }));
  }
  return rep;
}

inline Report cmd_ext(Context& ctx) {
  Report rep;
  const auto& sp = ctx.alg->spec();
  const auto& F = ctx.alg->field();
  for (const auto& blk : ctx.blocks()) {
    std::uint32_t i = blk.index;
    rep.merge(guarded("ext", [&] {
      Report local;
      ProjectiveCover cover =
          projective_cover(ctx.alg, ctx.simples(), ctx.rad().jac, blk, ctx.reg());
      for (std::uint32_t j = 0; j < sp.t; ++j) {
        std::size_t val = ext_dim(ctx.alg, ctx.simples(), ctx.rad().jac, cover, ctx.reg(), j);
        bool pinned = ctx.alg->char2() || F->is_zero(sp.lambda) || (i == 0 && j == 0);
        std::string expect = pinned ? (i == j ? "2" : "0") : "-";
        std::string name =
            "ext/S" + std::to_string(i) + "_S" + std::to_string(j);
        if (pinned)
          local.add(name, std::to_string(val) == expect, std::to_string(val), expect,
                    "dim Ext^1(S_i, S_j) is 2 on the diagonal and 0 off it");
        else
          local.add(name, true, std::to_string(val), expect, "computed Ext^1 dimension");
      }
      return local;
    }));
  }
  return rep;
}

inline Report cmd_tensor(Context& ctx, std::uint32_t i, std::uint32_t j) {
  return guarded("tensor", [&] {
    Report rep;
    const auto& sp = ctx.alg->spec();
    const auto& simples = ctx.simples();
    if (i >= sp.t || j >= sp.t) throw std::out_of_range("tensor index out of range");
    const Module& si = simples.at(i).second;
    const Module& sj = simples.at(j).second;
    Module t = tensor_module(si, sj);
    rep.add("tensor/dim", t.d == si.d * sj.d, std::to_string(t.d),
            std::to_string(si.d * sj.d), "dim(S_i (x) S_j) = dim S_i dim S_j");
    std::uint32_t target = (i + j) % sp.t;
    if (!ctx.alg->char2() && ctx.alg->field()->is_one(sp.lambda) && i >= 1 && j >= 1)
      rep.merge(g_eigenspace_on_tensor(ctx.alg, simples, i, j));
    SocleResult soc = socle(t, ctx.rad().jac, simples);
    std::string census;
    for (auto& [k, v] : soc.census)
      census += (census.empty() ? "" : ", ") + std::string("S") + std::to_string(k) + ":" +
                std::to_string(v);
    bool soc_ok = soc.census.size() == 1 && soc.census.count(target) == 1 &&
                  soc.census.at(target) == 1;
    rep.add("tensor/socle", soc_ok, census, "S" + std::to_string(target) + ":1",
            "soc(S_i (x) S_j) ~ S_{i+j mod t}");
    rep.add("tensor/indecomposable", soc_ok, soc_ok ? "simple socle" : "socle not simple",
            "simple socle", "a module with simple socle is indecomposable");
    if (i == 0 || j == 0) {
      bool iso = iso_test(t, simples.at(target).second).isomorphic;
      rep.add("tensor/unit_law", iso, iso ? "isomorphic" : "not isomorphic", "isomorphic",
              "S_0 (x) S_i ~ S_i ~ S_i (x) S_0");
    }
    return rep;
  });
}

inline Report cmd_wildness(Context& ctx) {
  return guarded("wildness", [&] {
    Report rep;
    const auto& sp = ctx.alg->spec();
    const auto& F = ctx.alg->field();
    auto verdicts = wildness_report(ctx.alg, ctx.simples(), ctx.rad().jac, ctx.blocks(),
                                    ctx.sym().symmetric);
    for (const auto& v : verdicts) {
      std::string name = "wildness/block" + std::to_string(v.index);
      std::string obs = (v.verdict == RepType::wild ? "WILD" : "UNKNOWN");
      obs += " (local=" + std::string(v.local ? "yes" : "no") +
             ", dim J/J^2=" + std::to_string(v.rad_quot1) +
             ", dim J^2/J^3=" + std::to_string(v.rad_quot2) + ")";
      bool expect_wild =
          ctx.alg->char2() || F->is_zero(sp.lambda) || v.index == 0 || sp.t == 1;
      if (expect_wild)
        rep.add(name, v.verdict == RepType::wild, obs, "WILD",
                "local symmetric block with dim J/J^2 = 2, dim J^2/J^3 >= 3 is wild");
      else
        rep.add_status(name, Status::unknown, obs, "open",
                       "the representation type of this block is open");
    }
    return rep;
  });
}

// --- emission -------------------------------------------------------------

inline nlohmann::ordered_json instance_json(const AlgPtr& alg) {
  const auto& sp = alg->spec();
  nlohmann::ordered_json j;
  j["p"] = sp.p;
  j["s"] = sp.s;
  j["t"] = sp.t;
  j["lambda"] = alg->field()->str(sp.lambda);
  j["mu"] = alg->field()->str(sp.mu);
  j["dim"] = alg->dim();
  return j;
}

inline void emit_report(const AlgPtr& alg, const Report& rep, const std::string& format,
                        std::ostream& out) {
  if (format == "json") {
    nlohmann::ordered_json doc;
    doc["instance"] = instance_json(alg);
    doc["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks) {
      nlohmann::ordered_json jc;
      jc["name"] = c.name;
      jc["status"] = status_name(c.status);
      jc["observed"] = c.observed;
      jc["expected"] = c.expected;
      jc["citation"] = c.citation;
      doc["checks"].push_back(jc);
    }
    out << doc.dump(2) << "\n";
    return;
  }
  const auto& sp = alg->spec();
  out << "# instance p=" << sp.p << " s=" << sp.s << " t=" << sp.t
      << " lambda=" << alg->field()->str(sp.lambda) << " mu=" << alg->field()->str(sp.mu)
      << " dim=" << alg->dim() << "\n";
  std::string family;
  for (const auto& c : rep.checks) {
    auto slash = c.name.find('/');
    std::string fam = slash == std::string::npos ? c.name : c.name.substr(0, slash);
    std::string rest = slash == std::string::npos ? c.name : c.name.substr(slash + 1);
    if (fam != family) {
      family = fam;
      out << "\n## " << fam << "\n\n";
      out << "| check | status | observed | expected | claim |\n";
      out << "|---|---|---|---|---|\n";
    }
    out << "| " << rest << " | " << status_name(c.status) << " | " << c.observed << " | "
        << c.expected << " | " << c.citation << " |\n";
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"exact verification suite for the pointed Hopf algebras H(lambda,mu) and B(V)#kG"};
  app.fallthrough(true);
  app.add_option("--p", cfg.p, "characteristic (prime)")->required();
  app.add_option("--s", cfg.s, "exponent s in n = p^s t");
  app.add_option("--t", cfg.t, "order of the semisimple part (p does not divide t)");
  app.add_option("--lambda", cfg.lambda, "lifting parameter lambda (scalar literal)");
  app.add_option("--mu", cfg.mu, "lifting parameter mu (scalar literal)");
  app.add_option("--format", cfg.format, "report format")
      ->check(CLI::IsMember({"json", "md"}));
  app.add_option("--seed", cfg.seed, "seed for sampled checks");
  const std::vector<std::string> commands = {"verify-algebra", "verify-hopf", "integrals",
                                             "blocks",         "simples",     "projectives",
                                             "radical",        "ext",         "wildness",
                                             "report"};
  for (const auto& name : commands) app.add_subcommand(name, "");
  CLI::App* tensor = app.add_subcommand("tensor", "socle census of S_i (x) S_j");
  tensor->add_option("--i", cfg.tensor_i, "left factor")->required();
  tensor->add_option("--j", cfg.tensor_j, "right factor")->required();
  app.require_subcommand(0, 1);

  std::vector<const char*> argv;
  argv.push_back("hopfrep");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  Context ctx;
  std::string command = "report";
  for (const auto& name : commands)
    if (app.got_subcommand(name)) command = name;
  if (app.got_subcommand("tensor")) command = "tensor";
  try {
    auto F = FieldCtx::make(cfg.p, cfg.t);
    Scalar lam = F->parse(cfg.lambda);
    Scalar mu = F->parse(cfg.mu);
    ctx.alg = Algebra::build(AlgebraSpec::make(cfg.p, cfg.s, cfg.t, lam, mu, F));
    ctx.seed = cfg.seed;
  } catch (const std::exception& e) {
    err << "error: invalid configuration: " << e.what() << "\n";
    return 2;
  }
  if (command == "tensor" &&
      (cfg.tensor_i < 0 || cfg.tensor_j < 0 ||
       cfg.tensor_i >= static_cast<std::int64_t>(ctx.alg->spec().t) ||
       cfg.tensor_j >= static_cast<std::int64_t>(ctx.alg->spec().t))) {
    err << "error: tensor indices must lie in [0, t)\n";
    return 2;
  }

  Report rep;
  auto structural_stop = [&](const Report& stage) {
    rep.merge(stage);
    return !stage.ok();
  };
  if (command == "verify-algebra") rep = cmd_verify_algebra(ctx);
  else if (command == "verify-hopf") rep = cmd_verify_hopf(ctx);
  else if (command == "integrals") rep = cmd_integrals(ctx);
  else if (command == "blocks") rep = cmd_blocks(ctx);
  else if (command == "simples") rep = cmd_simples(ctx);
  else if (command == "projectives") rep = cmd_projectives(ctx);
  else if (command == "radical") rep = cmd_radical(ctx);
  else if (command == "ext") rep = cmd_ext(ctx);
  else if (command == "wildness") rep = cmd_wildness(ctx);
  else if (command == "tensor")
    rep = cmd_tensor(ctx, static_cast<std::uint32_t>(cfg.tensor_i),
                     static_cast<std::uint32_t>(cfg.tensor_j));
  else {
    // full report in dependency order, stopping on structural failure
    bool stop = structural_stop(cmd_verify_algebra(ctx));
    if (!stop) stop = structural_stop(cmd_verify_hopf(ctx));
    if (!stop) stop = structural_stop(cmd_blocks(ctx));
    if (!stop) stop = structural_stop(cmd_integrals(ctx));
    if (!stop) stop = structural_stop(cmd_simples(ctx));
    if (!stop) stop = structural_stop(cmd_radical(ctx));
    if (!stop) stop = structural_stop(cmd_projectives(ctx));
    if (!stop) stop = structural_stop(cmd_ext(ctx));
    if (!stop) structural_stop(cmd_wildness(ctx));
  }
  emit_report(ctx.alg, rep, cfg.format, out);
  return rep.ok() ? 0 : 1;
}

}  // namespace hopfrep::cli
