// Batch experiment runner: builds Cayley balls, enumerates geodesics,
// runs the property certifiers/falsifiers, emits witness families,
// produces filling certificates and synchronization traces, and writes
// deterministic JSON/CSV reports.
//
// Exit codes: 0 = holds up to the bound, 2 = counterexample found,
// 1 = error or budget exceeded.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "loopshort/hnn_tools.hpp"
#include "loopshort/properties.hpp"
#include "loopshort/report.hpp"
#include "loopshort/zoo.hpp"

using namespace loopshort;
using nlohmann::json;

namespace {

struct Common {
  std::string group;
  std::string json_path;
  std::string csv_path;
  uint64_t mem_mb = 8192;
  int workers = 1;
  uint64_t seed = 12345;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Group source: a preset name or a presentation file path.
struct LoadedGroup {
  std::string name;
  PresentationFile file;
  std::shared_ptr<GroupSolver> solver;
};

LoadedGroup load_group(const std::string& spec) {
  for (const std::string& name : preset_names())
    if (name == spec) {
      const Preset& p = preset(name);
      return {p.name, p.file, p.solver};
    }
  std::ifstream in(spec);
  if (!in.good()) throw std::invalid_argument("no preset or file named '" + spec + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  PresentationFile file = parse_presentation(buf.str());
  std::string name = file.pres.name.empty() ? spec : file.pres.name;
  return {name, file, make_solver(file)};
}

void emit(const Common& common, const Verdict& v, double wall) {
  json j = verdict_to_json(v, wall);
  std::string text = j.dump(2) + "\n";
  if (!common.json_path.empty()) std::ofstream(common.json_path) << text;
  std::cout << text;
  if (!common.csv_path.empty()) {
    bool fresh = !std::ifstream(common.csv_path).good();
    std::ofstream out(common.csv_path, std::ios::app);
    if (fresh) out << csv_header() << "\n";
    out << csv_row(v, wall) << "\n";
  }
}

uint64_t mem_budget_bytes(const Common& common) {
  if (const char* env = std::getenv("LOOPSHORT_MEM_MB"))
    return std::strtoull(env, nullptr, 10) << 20;
  return common.mem_mb << 20;
}

BallIndex build_ball_checked(const LoadedGroup& g, int radius, const Common& common) {
  BallOptions opts;
  opts.memory_budget_bytes = mem_budget_bytes(common);
  BallIndex ball = build_ball(*g.solver, radius, opts);
  if (!ball.complete())
    throw BudgetExceeded("ball build hit the memory budget at radius " +
                         std::to_string(ball.radius) + " of " + std::to_string(radius));
  return ball;
}

std::vector<Word> witness_family(const LoadedGroup& g, const std::string& family, int max_len) {
  std::vector<Word> out;
  if (family == "gersten-loop") {
    for (int n = 1; 8 * n + 8 <= max_len; ++n)
      out.push_back(g.file.pres.alphabet.word(gersten_loop(n)));
  } else if (family == "stallings-alpha" || family == "stallings-beta") {
    for (int n = 1; 3 * n - 1 <= max_len; ++n) {
      std::string w = family == "stallings-alpha" ? stallings_alpha(n) : stallings_beta(n);
      out.push_back(g.file.pres.alphabet.word(w));
    }
  } else {
    throw std::invalid_argument("unknown family " + family);
  }
  return out;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"workbench for fellow-traveler and loop-shortening experiments"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--mem-mb", common.mem_mb, "memory budget in MiB (env LOOPSHORT_MEM_MB wins)");
  app.add_option("--workers", common.workers, "worker threads for sweeps");
  app.add_option("--seed", common.seed, "seed for sampled subroutines");
  app.add_option("--json", common.json_path, "write the JSON report here");
  app.add_option("--csv", common.csv_path, "append a CSV summary row here");

  auto* ball_cmd = app.add_subcommand("ball", "build B(N) and report sphere sizes");
  int ball_radius = 0;
  bool ball_elements = false;
  std::string ball_out;
  ball_cmd->add_option("--group", common.group)->required();
  ball_cmd->add_option("--radius", ball_radius)->required();
  ball_cmd->add_flag("--elements", ball_elements, "include every element with its distance");
  ball_cmd->add_option("--out", ball_out, "write ball.json here");

  auto* geo_cmd = app.add_subcommand("geodesics", "enumerate geodesics to a word's endpoint");
  std::string geo_word;
  size_t geo_limit = 1000;
  geo_cmd->add_option("--group", common.group)->required();
  geo_cmd->add_option("--word", geo_word)->required();
  geo_cmd->add_option("--limit", geo_limit);

  auto* fftp_cmd = app.add_subcommand("check-fftp", "falsification by fellow traveler up to R");
  int fftp_k = 1, fftp_R = 4;
  std::string fftp_mode = "all-words";
  fftp_cmd->add_option("--group", common.group)->required();
  fftp_cmd->add_option("--k", fftp_k)->required();
  fftp_cmd->add_option("--max-len", fftp_R)->required();
  fftp_cmd->add_option("--mode", fftp_mode)
      ->check(CLI::IsMember({"all-words", "geodesic-prefix"}));

  int lsp_k = 1, lsp_L = 4;
  std::string lsp_family;
  auto* lsp_cmd = app.add_subcommand("check-lsp", "loop shortening up to length L");
  auto* blsp_cmd = app.add_subcommand("check-blsp", "basepoint loop shortening up to length L");
  for (auto* cmd : {lsp_cmd, blsp_cmd}) {
    cmd->add_option("--group", common.group)->required();
    cmd->add_option("--k", lsp_k)->required();
    cmd->add_option("--max-loop-len", lsp_L)->required();
    cmd->add_option("--family", lsp_family,
                    "restrict to a witness family (gersten-loop, stallings-alpha, ...)");
  }

  auto* ac_cmd = app.add_subcommand("check-ac", "almost convexity over B(N) pairs");
  int ac_N = 3, ac_C = 4;
  bool ac_sphere_only = false;
  ac_cmd->add_option("--group", common.group)->required();
  ac_cmd->add_option("--N", ac_N)->required();
  ac_cmd->add_option("--C", ac_C)->required();
  ac_cmd->add_flag("--sphere-only", ac_sphere_only, "restrict pairs to the sphere S(N)");

  auto* fill_cmd = app.add_subcommand("fill", "quadratic filling certificate for a loop");
  std::string fill_word;
  int fill_k = 2;
  bool fill_rects = false;
  fill_cmd->add_option("--group", common.group)->required();
  fill_cmd->add_option("--word", fill_word)->required();
  fill_cmd->add_option("--k", fill_k)->required();
  fill_cmd->add_flag("--rectangles", fill_rects, "include the relator rectangles");

  auto* sync_cmd = app.add_subcommand("synchronize", "asynchronous-to-synchronous conversion");
  std::string sync_w, sync_u;
  int sync_k = 1;
  sync_cmd->add_option("--group", common.group)->required();
  sync_cmd->add_option("--w", sync_w)->required();
  sync_cmd->add_option("--u", sync_u)->required();
  sync_cmd->add_option("--k", sync_k)->required();

  auto* wit_cmd = app.add_subcommand("witness", "emit a witness family word");
  std::string wit_family;
  int wit_n = 1;
  wit_cmd->add_option("--family", wit_family)
      ->required()
      ->check(CLI::IsMember(
          {"gersten-loop", "stallings-alpha", "stallings-beta", "stallings-gamma"}));
  wit_cmd->add_option("--n", wit_n);

  auto* hnn_cmd = app.add_subcommand(
      "hnn-verify", "strip-equidistance, totally geodesic, relators and pinch self-checks");
  int hnn_R = 4;
  hnn_cmd->add_option("--group", common.group)->required();
  hnn_cmd->add_option("--R", hnn_R);

  auto* table_cmd = app.add_subcommand("table1", "desk-scale property grid over the four groups");
  int t_fftp_R = 4, t_fftp_k = 3, t_lsp_L = 5, t_lsp_k = 2, t_ac_N = 3, t_ac_C = 4;
  table_cmd->add_option("--fftp-max-len", t_fftp_R);
  table_cmd->add_option("--fftp-k", t_fftp_k);
  table_cmd->add_option("--loop-len", t_lsp_L);
  table_cmd->add_option("--loop-k", t_lsp_k);
  table_cmd->add_option("--ac-N", t_ac_N);
  table_cmd->add_option("--ac-C", t_ac_C);

  CLI11_PARSE(app, argc, argv);
  auto t0 = std::chrono::steady_clock::now();

  if (app.got_subcommand(ball_cmd)) {
    LoadedGroup g = load_group(common.group);
    BallIndex ball = build_ball_checked(g, ball_radius, common);
    json j;
    j["schema"] = kReportSchema;
    j["group"] = g.name;
    j["radius"] = ball.radius;
    j["sphere_sizes"] = ball.sphere_sizes;
    j["ball_size"] = ball.size();
    if (ball_elements) {
      json elems = json::array();
      for (uint32_t i = 0; i < ball.size(); ++i)
        elems.push_back({{"element", g.solver->describe(ball.index.key(i))},
                         {"distance", ball.dist[i]}});
      j["elements"] = std::move(elems);
    }
    j["timing"] = {{"wall_seconds", seconds_since(t0)}};
    std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!ball_out.empty()) std::ofstream(ball_out) << text;
    if (!common.json_path.empty()) std::ofstream(common.json_path) << text;
    return kExitHolds;
  }

  if (app.got_subcommand(geo_cmd)) {
    LoadedGroup g = load_group(common.group);
    Word w = g.file.pres.alphabet.word(geo_word);
    BallIndex ball = build_ball_checked(g, static_cast<int>(w.size()), common);
    auto geos = all_geodesics_to(ball, g.solver->eval(w), nullptr, geo_limit);
    json j;
    j["schema"] = kReportSchema;
    j["group"] = g.name;
    j["word"] = geo_word;
    j["distance"] = *ball.distance(g.solver->eval(w));
    j["geodesics"] = json::array();
    for (const Word& geo : geos) j["geodesics"].push_back(g.file.pres.alphabet.str(geo));
    j["timing"] = {{"wall_seconds", seconds_since(t0)}};
    std::cout << j.dump(2) << "\n";
    if (!common.json_path.empty()) std::ofstream(common.json_path) << j.dump(2) << "\n";
    return kExitHolds;
  }

  if (app.got_subcommand(fftp_cmd)) {
    LoadedGroup g = load_group(common.group);
    Verdict v = check_fftp(
        *g.solver, fftp_k, fftp_R,
        fftp_mode == "all-words" ? FftpMode::all_words : FftpMode::geodesic_prefix);
    v.group = g.name;
    emit(common, v, seconds_since(t0));
    return verdict_exit_code(v);
  }

  if (app.got_subcommand(lsp_cmd) || app.got_subcommand(blsp_cmd)) {
    bool basepoint = app.got_subcommand(blsp_cmd) != 0u;
    LoadedGroup g = load_group(common.group);
    Verdict v;
    if (!lsp_family.empty()) {
      std::vector<Word> loops = witness_family(g, lsp_family, lsp_L);
      v = check_loop_family(*g.solver, loops, lsp_k, basepoint, lsp_family);
      v.params["max_loop_len"] = lsp_L;
    } else {
      v = check_lsp(*g.solver, lsp_k, lsp_L, basepoint);
    }
    v.group = g.name;
    emit(common, v, seconds_since(t0));
    return verdict_exit_code(v);
  }

  if (app.got_subcommand(ac_cmd)) {
    LoadedGroup g = load_group(common.group);
    BallIndex ball = build_ball_checked(g, ac_N, common);
    Verdict v = check_ac(ball, ac_C, ac_sphere_only);
    v.group = g.name;
    emit(common, v, seconds_since(t0));
    return verdict_exit_code(v);
  }

  if (app.got_subcommand(fill_cmd)) {
    LoadedGroup g = load_group(common.group);
    DistanceOracle oracle(*g.solver);
    Word w = g.file.pres.alphabet.word(fill_word);
    FillOptions opts;
    opts.keep_rectangles = fill_rects;
    FillingCertificate cert = fill_loop(*g.solver, w, fill_k, oracle, opts);
    json j;
    j["schema"] = kReportSchema;
    j["group"] = g.name;
    j["word"] = fill_word;
    j["k"] = cert.k;
    j["total_relators"] = cert.total_relators;
    j["max_relator_len"] = cert.max_relator_len;
    j["area_bound"] = w.size() * w.size();
    j["chain"] = json::array();
    for (const auto& st : cert.steps)
      j["chain"].push_back({{"loop", g.file.pres.alphabet.str(st.loop)},
                            {"basepoint", g.solver->describe(st.basepoint)},
                            {"relators", st.relators},
                            {"max_relator_len", st.max_relator_len}});
    if (fill_rects) {
      j["rectangles"] = json::array();
      for (const Word& r : cert.rectangles)
        j["rectangles"].push_back(g.file.pres.alphabet.str(r));
    }
    j["timing"] = {{"wall_seconds", seconds_since(t0)}};
    std::cout << j.dump(2) << "\n";
    if (!common.json_path.empty()) std::ofstream(common.json_path) << j.dump(2) << "\n";
    return kExitHolds;
  }

  if (app.got_subcommand(sync_cmd)) {
    LoadedGroup g = load_group(common.group);
    DistanceOracle oracle(*g.solver);
    Word w = g.file.pres.alphabet.word(sync_w);
    Word u = g.file.pres.alphabet.word(sync_u);
    auto phi = async_ft(*g.solver, w, u, sync_k, identity_context(*g.solver), &oracle);
    if (!phi) {
      std::cerr << "the words do not asynchronously " << sync_k << "-fellow travel\n";
      return kExitError;
    }
    auto res = synchronize(*g.solver, w, u, *phi, sync_k, identity_context(*g.solver), &oracle);
    json j;
    j["schema"] = kReportSchema;
    j["group"] = g.name;
    j["w"] = sync_w;
    j["u"] = sync_u;
    j["k"] = sync_k;
    j["phi"] = phi->phi;
    j["case"] = res.case_id;
    j["j"] = res.j;
    j["l"] = res.l;
    j["p1"] = g.file.pres.alphabet.str(res.p1);
    j["p2"] = g.file.pres.alphabet.str(res.p2);
    j["v"] = g.file.pres.alphabet.str(res.v);
    j["claimed_constant"] = res.continuous_constant;
    j["verified_integer_constant"] = res.checked_constant;
    j["verified_max_distance"] = res.verification.max_distance;
    j["timing"] = {{"wall_seconds", seconds_since(t0)}};
    std::cout << j.dump(2) << "\n";
    if (!common.json_path.empty()) std::ofstream(common.json_path) << j.dump(2) << "\n";
    return kExitHolds;
  }

  if (app.got_subcommand(wit_cmd)) {
    std::string text;
    std::string group = "gersten";
    if (wit_family == "gersten-loop") {
      text = gersten_loop(wit_n);
    } else {
      group = "stallings";
      if (wit_family == "stallings-alpha") text = stallings_alpha(wit_n);
      if (wit_family == "stallings-beta") text = stallings_beta(wit_n);
      if (wit_family == "stallings-gamma") text = stallings_gamma();
    }
    const Preset& p = preset(group);
    Word w = p.word(text);
    json j;
    j["schema"] = kReportSchema;
    j["family"] = wit_family;
    j["n"] = wit_n;
    j["group"] = group;
    j["word"] = text;
    j["length"] = w.size();
    j["is_identity"] = p.solver->is_identity(p.solver->eval(w));
    j["timing"] = {{"wall_seconds", seconds_since(t0)}};
    std::cout << j.dump(2) << "\n";
    if (!common.json_path.empty()) std::ofstream(common.json_path) << j.dump(2) << "\n";
    return kExitHolds;
  }

  if (app.got_subcommand(hnn_cmd)) {
    LoadedGroup g = load_group(common.group);
    const auto* hnn = dynamic_cast<const HnnSolver*>(g.solver.get());
    if (!hnn) {
      std::cerr << "group is not a multiple HNN extension\n";
      return kExitError;
    }
    json j;
    j["schema"] = kReportSchema;
    j["group"] = g.name;
    j["R"] = hnn_R;
    bool all_ok = true;
    for (const Word& r : g.file.pres.relators)
      all_ok &= g.solver->is_identity(g.solver->eval(r));
    j["relators_hold"] = all_ok;
    auto strip = check_strip_equidistant(*hnn, hnn_R);
    j["strip_equidistant_up_to_R"] = strip.holds;
    all_ok &= strip.holds;
    BallIndex base_ball = build_ball(hnn->base(), hnn_R);
    json tg = json::array();
    for (size_t i = 0; i < hnn->stable_count(); ++i) {
      if (hnn->oracle_is_full(static_cast<int>(i))) continue;
      for (bool side : {false, true}) {
        const auto& pr = hnn->pairs(static_cast<int>(i))[0];
        const Word& gen = side ? pr.second : pr.first;
        auto rep = check_totally_geodesic(base_ball, {gen}, hnn_R);
        tg.push_back({{"stable", static_cast<int>(i)},
                      {"side", side ? "V" : "U"},
                      {"generator", hnn->base().alphabet().str(gen)},
                      {"totally_geodesic_up_to_R", rep.holds}});
        all_ok &= rep.holds;
      }
    }
    j["totally_geodesic"] = std::move(tg);
    // Pinch-freeness of ball geodesics, a consequence of equidistance.
    bool geodesics_reduced = true;
    BallIndex full_ball = build_ball(*hnn, std::min(hnn_R, 4));
    for (uint32_t i = 0; i < full_ball.size(); ++i)
      if (find_pinch(*hnn, full_ball.parent_word(full_ball.index.key(i))).has_value())
        geodesics_reduced = false;
    j["ball_geodesics_stable_letter_reduced"] = geodesics_reduced;
    all_ok &= geodesics_reduced;
    j["outcome"] = all_ok ? "holds-up-to-bound" : "counterexample";
    j["timing"] = {{"wall_seconds", seconds_since(t0)}};
    std::cout << j.dump(2) << "\n";
    if (!common.json_path.empty()) std::ofstream(common.json_path) << j.dump(2) << "\n";
    return all_ok ? kExitHolds : kExitCounterexample;
  }

  if (app.got_subcommand(table_cmd)) {
    json grid = json::array();
    std::string csv = "group,fftp,blsp,lsp,ac\n";
    for (const char* name : {"bridson", "wise", "gersten", "stallings"}) {
      LoadedGroup g = load_group(name);
      bool big_alphabet = std::string(name) == "stallings";
      int fftp_R_here = big_alphabet ? std::min(t_fftp_R, 3) : t_fftp_R;
      int lsp_L_here = big_alphabet ? std::min(t_lsp_L, 4) : t_lsp_L;
      Verdict fftp = check_fftp(*g.solver, t_fftp_k, fftp_R_here);
      Verdict blsp = check_lsp(*g.solver, t_lsp_k, lsp_L_here, true);
      Verdict lsp = check_lsp(*g.solver, t_lsp_k, lsp_L_here, false);
      BallIndex ball = build_ball_checked(g, t_ac_N, common);
      Verdict ac = check_ac(ball, t_ac_C, false);
      auto cell = [](const Verdict& v) {
        return std::string(v.holds ? "holds" : "counterexample");
      };
      grid.push_back(
          {{"group", name},
           {"fftp", {{"k", t_fftp_k}, {"max_len", fftp_R_here}, {"outcome", cell(fftp)}}},
           {"blsp", {{"k", t_lsp_k}, {"max_loop_len", lsp_L_here}, {"outcome", cell(blsp)}}},
           {"lsp", {{"k", t_lsp_k}, {"max_loop_len", lsp_L_here}, {"outcome", cell(lsp)}}},
           {"ac", {{"N", t_ac_N}, {"C", t_ac_C}, {"outcome", cell(ac)}}}});
      csv += std::string(name) + "," + cell(fftp) + "," + cell(blsp) + "," + cell(lsp) + "," +
             cell(ac) + "\n";
    }
    json j;
    j["schema"] = kReportSchema;
    j["note"] = "finite-radius results at the stated parameters only";
    j["grid"] = std::move(grid);
    j["timing"] = {{"wall_seconds", seconds_since(t0)}};
    std::cout << j.dump(2) << "\n";
    if (!common.json_path.empty()) std::ofstream(common.json_path) << j.dump(2) << "\n";
    if (!common.csv_path.empty()) std::ofstream(common.csv_path) << csv;
    std::cout << csv;
    return kExitHolds;
  }

  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
