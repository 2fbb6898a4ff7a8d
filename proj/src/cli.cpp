// Copyright 2026 The ccx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ccx/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <optional>

#include "ccx/extremality.hpp"
#include "ccx/io.hpp"
#include "ccx/km.hpp"

namespace ccx {

namespace {

struct Flags {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  int samples = 16;
  int word_len = 6;
  std::string out;
  std::string map;
  std::string map2;
  std::string op = "T";
  std::optional<int> sweep_index;
  double alpha = 0.5;
  int trials = 100;
  std::string file;
};

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return 1;
    case ErrorCode::ResidualTooLarge:
    case ErrorCode::Singular: return 3;
    default: return 2;
  }
}

std::string pick_map(const Problem& p, const std::string& requested, const std::string& fallback) {
  if (!requested.empty()) return requested;
  if (p.maps.count(fallback)) return fallback;
  if (p.map_names.empty()) throw Error(ErrorCode::ParseError, "maps: the file defines no maps");
  return p.map_names.front();
}

Json flags_json(const CertificateFlags& f) {
  return {{"pure_state_inflation", f.pure_state_inflation},
          {"multiplicative", f.multiplicative},
          {"range_invariant", f.range_invariant},
          {"pure_cp", f.pure_cp},
          {"disjoint_pure_sum", f.disjoint_pure_sum}};
}

Json list_json(const std::vector<CMatrix>& ms) {
  Json out = Json::array();
  for (const CMatrix& m : ms) out.push_back(matrix_to_json(m));
  return out;
}

RNOperator select_operator(const RNContext& ctx, const Problem& p, const Flags& f, const Tolerances& tol) {
  if (f.sweep_index) {
    const std::vector<RNOperator> sweep = interval_sample(ctx, 0, SampleMode::BasisSweep, 0, tol);
    if (*f.sweep_index < 0 || *f.sweep_index >= static_cast<int>(sweep.size())) {
      throw Error(ErrorCode::BadIndex, "sweep index out of range (sweep has " + std::to_string(sweep.size()) + ")");
    }
    return sweep[static_cast<size_t>(*f.sweep_index)];
  }
  const auto it = p.operators.find(f.op);
  if (it == p.operators.end()) throw Error(ErrorCode::ParseError, "operators: no operator named \"" + f.op + "\"");
  const int dim = ctx.triple.dilation_dim;
  if (it->second.rows() != dim || it->second.cols() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "operator must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  return make_operator(ctx, it->second, tol);
}

Json run_command(const std::string& cmd, const Problem& p, const Flags& f, int& status) {
  Tolerances tol = p.tol;
  if (f.tol) tol.eq_tol = *f.tol;
  tol.validate();
  const std::uint64_t seed = f.seed.value_or(p.seed);
  Json r = Json::object();

  if (cmd == "validate") {
    const ValidationReport act = validate_action(p.action, tol);
    r["action"] = {{"valid", act.valid}, {"failures", act.failures}};
    std::string reason = act.valid ? "" : act.failures.front();
    Json maps = Json::object();
    for (const std::string& name : p.map_names) {
      const MapValidation v = validate_map(p.maps.at(name), act.valid ? &p.action : nullptr, tol);
      maps[name] = {{"cp", v.cp}, {"unital", v.unital}, {"invariant", v.invariant ? Json(*v.invariant) : Json()}};
      if (reason.empty() && !(v.cp && v.unital && v.invariant.value_or(true))) {
        reason = "map " + name + (!v.cp ? " is not CP" : !v.unital ? " is not unital" : " is not invariant");
      }
    }
    r["maps"] = std::move(maps);
    r["valid"] = reason.empty();
    if (!reason.empty()) {
      r["reason"] = reason;
      status = 2;
    }
    return r;
  }

  require_valid_action(p.action, tol);
  const std::string name = pick_map(p, f.map, "phi");
  const CPMap& phi = p.map(name);
  r["map"] = name;

  if (cmd == "twirl") {
    const CPMap tw = twirl(phi, p.action, tol);
    r["twirled"] = map_to_json(tw);
    r["invariance_defect"] = invariance_defect(tw, p.action);
    return r;
  }
  if (cmd == "equivalence") {
    const std::string other = pick_map(p, f.map2, "psi");
    EquivalenceOptions opt;
    opt.word_len = f.word_len;
    opt.seed = seed;
    const EquivalenceResult e = unitary_equivalence(phi, p.map(other), opt, tol);
    r["map2"] = other;
    r["status"] = to_string(e.status);
    r["reason"] = e.reason;
    r["U"] = e.U ? matrix_to_json(*e.U) : Json();
    return r;
  }
  if (cmd == "km fixed" || cmd == "km restrict" || cmd == "km extend") {
    const FixedPointContext fp = fixed_point_algebra(p.action, tol);
    r["block_form"] = fp.block_form.block_dims();
    r["multiplicities"] = fp.multiplicities;
    r["fixed_dim"] = fp.fixed.basis.size();
    if (cmd == "km fixed") {
      r.erase("map");
      r["units"] = list_json(fp.units);
      r["central_projections"] = list_json(fp.central_projections);
      r["W"] = matrix_to_json(fp.W);
      return r;
    }
    if (cmd == "km restrict") {
      r["restricted"] = map_to_json(restrict_E(phi, fp, tol));
      return r;
    }
    // extend: psi lives on the block form and is parsed against it
    const std::string psi_name = f.map2.empty() ? std::string("psi") : f.map2;
    if (!p.raw.contains("maps") || !p.raw["maps"].contains(psi_name)) {
      throw Error(ErrorCode::ParseError, "maps: no map named \"" + psi_name + "\"");
    }
    const CPMap psi =
        map_from_json(p.raw["maps"][psi_name], fp.block_form, p.hilbert_dim, tol, "/maps/" + psi_name);
    const CPMap ext = extend_Einv(psi, fp, tol);
    r["map"] = psi_name;
    r["extended"] = map_to_json(ext);
    r["round_trip_error"] = choi_distance(restrict_E(ext, fp, tol), psi);
    return r;
  }
  if (cmd == "km hull") {
    r.erase("map");
    std::vector<std::string> names = p.map_names;
    if (p.raw.contains("hull")) {
      names.clear();
      for (const Json& n : p.raw["hull"]) {
        if (!n.is_string()) throw Error(ErrorCode::ParseError, "/hull: expected map names");
        names.push_back(n.get<std::string>());
      }
    }
    std::vector<CPMap> maps;
    for (const std::string& n : names) maps.push_back(p.map(n));
    Budget b{f.samples, seed, f.word_len};
    const HullReport h = hull_experiment(maps, p.action, f.trials, seed, b, tol);
    r["maps"] = names;
    r["trials"] = h.trials;
    r["members"] = h.members;
    r["verdicts"] = h.verdicts;
    r["held_out_distance"] = h.held_out_distance;
    r["hypotheses"] = {{"hilbert_finite", h.hilbert_finite},
                       {"algebra_commutative", h.algebra_commutative},
                       {"algebra_factor", h.algebra_factor}};
    r["note"] = h.note;
    return r;
  }
  if (cmd == "extremality") {
    const ExtremalityReport rep = extremality_verdict(phi, p.action, Budget{f.samples, seed, f.word_len}, tol);
    r["verdict"] = to_string(rep.verdict);
    r["certificate"] = rep.certificate;
    r["certificates"] = flags_json(rep.flags);
    r["commutant_dim"] = rep.commutant_dim;
    r["samples_tested"] = rep.samples_tested;
    r["samples_skipped"] = rep.samples_skipped;
    r["samples_unknown"] = rep.samples_unknown;
    r["linear_extreme"] = linear_extremality_check(phi, tol);
    if (rep.witness) {
      const Witness& w = *rep.witness;
      r["witness"] = {{"T", matrix_to_json(w.T)},
                      {"alpha", w.alpha},
                      {"T1", matrix_to_json(w.split.T1)},
                      {"T2", matrix_to_json(w.split.T2)},
                      {"phi1", map_to_json(w.split.phi1)},
                      {"phi2", map_to_json(w.split.phi2)},
                      {"reason", w.reason},
                      {"verified", verify_witness(phi, p.action, w, tol)}};
    } else {
      r["witness"] = nullptr;
    }
    return r;
  }

  // Remaining commands work on the dilation.
  const RNContext ctx = build_context(phi, p.action, tol);
  if (cmd == "dilate") {
    r["triple"] = triple_to_json(ctx.triple);
    r["covariant_unitaries"] = list_json(ctx.covariant.U);
    r["reconstruction_error"] = reconstruction_error(ctx.triple, phi);
    const CovarianceDefects d = covariance_defects(ctx.triple, ctx.covariant, p.action);
    r["defects"] = {{"fixes_v", d.fixes_v},
                    {"intertwines", d.intertwines},
                    {"homomorphism", d.homomorphism},
                    {"unitarity", d.unitarity}};
    return r;
  }
  if (cmd == "commutant") {
    r["dimension"] = ctx.commutant.size();
    r["basis"] = list_json(ctx.commutant);
    return r;
  }
  if (cmd == "rn forward") {
    const RNOperator op = select_operator(ctx, p, f, tol);
    const ForwardResult fr = rn_forward(ctx, op, tol);
    r["T"] = matrix_to_json(op.T);
    r["phi_invertible"] = op.phi_invertible;
    r["result"] = map_to_json(fr.map);
    r["cp"] = fr.cp;
    r["invariant"] = fr.invariant;
    r["dominated"] = fr.dominated;
    return r;
  }
  if (cmd == "rn inverse") {
    const std::string other = pick_map(p, f.map2, "psi");
    const InverseResult inv = rn_inverse(ctx, p.map(other), tol);
    r["map2"] = other;
    r["T"] = matrix_to_json(inv.op.T);
    r["phi_invertible"] = inv.op.phi_invertible;
    r["residual"] = inv.residual;
    return r;
  }
  if (cmd == "split") {
    const RNOperator op = select_operator(ctx, p, f, tol);
    const SplitResult s = split_by_T(ctx, op, f.alpha, tol);
    r["T"] = matrix_to_json(op.T);
    r["alpha"] = f.alpha;
    r["T1"] = matrix_to_json(s.T1);
    r["T2"] = matrix_to_json(s.T2);
    r["phi1"] = map_to_json(s.phi1);
    r["phi2"] = map_to_json(s.phi2);
    r["reconstruction_error"] = s.reconstruction_error;
    r["proper"] = is_proper({{{s.T1, s.phi1}, {s.T2, s.phi2}}}, tol);
    return r;
  }
  throw Error(ErrorCode::ParseError, "unknown command " + cmd);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group-invariant UCP maps: dilations, Radon-Nikodym derivatives and C*-extremality", "ccx"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--tol", f.tol, "override eq_tol");
  app.add_option("--seed", f.seed, "override the file seed");
  app.add_option("--samples", f.samples, "random interval samples for extremality")->check(CLI::NonNegativeNumber);
  app.add_option("--word-len", f.word_len, "word length of the trace test")->check(CLI::PositiveNumber);
  app.add_option("--out", f.out, "write the report here instead of stdout");
  app.add_option("--map", f.map, "map to operate on (default: phi, else the first map)");
  app.add_option("--map2", f.map2, "second map (equivalence, rn inverse, km extend)");
  app.add_option("--T", f.op, "operator name for rn forward and split");
  app.add_option("--sweep-index", f.sweep_index, "use this basis-sweep operator instead of --T");
  app.add_option("--alpha", f.alpha, "split parameter");
  app.add_option("--trials", f.trials, "km hull trials")->check(CLI::NonNegativeNumber);

  std::string command;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& full, const std::string& help) {
    CLI::App* sub = parent->add_subcommand(name, help)->fallthrough();
    sub->add_option("file", f.file, "problem file")->required();
    sub->callback([&command, full] { command = full; });
  };
  leaf(&app, "validate", "validate", "check the action and every map");
  leaf(&app, "twirl", "twirl", "group-average a map");
  leaf(&app, "dilate", "dilate", "minimal Stinespring dilation and covariant unitaries");
  leaf(&app, "commutant", "commutant", "commutant of pi(A) and U(G)");
  leaf(&app, "split", "split", "two-term split from a commutant operator");
  leaf(&app, "equivalence", "equivalence", "unitary equivalence of two maps");
  leaf(&app, "extremality", "extremality", "C*-extremality report");
  CLI::App* rn = app.add_subcommand("rn", "Radon-Nikodym correspondence")->fallthrough()->require_subcommand(1);
  leaf(rn, "forward", "rn forward", "phi_T from T");
  leaf(rn, "inverse", "rn inverse", "T from psi");
  CLI::App* km = app.add_subcommand("km", "fixed-point algebra correspondence")->fallthrough()->require_subcommand(1);
  leaf(km, "fixed", "km fixed", "fixed-point algebra and its block form");
  leaf(km, "restrict", "km restrict", "restriction to the fixed-point algebra");
  leaf(km, "extend", "km extend", "extension by averaging");
  leaf(km, "hull", "km hull", "C*-convex hull experiment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "ccx: " << e.what() << "\n";
    return 1;
  }

  Json report{{"schema", kSchema}, {"command", command}};
  int status = 0;
  try {
    const Problem p = load_problem(f.file);
    report["result"] = run_command(command, p, f, status);
  } catch (const Error& e) {
    status = exit_code(e.code());
    report["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    err << "ccx: " << to_string(e.code()) << ": " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    status = 1;
    report["error"] = {{"code", "ParseError"}, {"message", e.what()}};
    err << "ccx: " << e.what() << "\n";
  }
  const std::string text = dump_json(report) + "\n";
  if (f.out.empty()) {
    out << text;
  } else {
    std::ofstream file(f.out, std::ios::binary);
    if (!file) {
      err << "ccx: cannot write " << f.out << "\n";
      return 1;
    }
    file << text;
  }
  return status;
}

}  // namespace ccx
