#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "fog/belief_oracle.hpp"
#include "fog/krk_refuter.hpp"
#include "fog/strategy_kqk.hpp"
#include "fog/strategy_krrk.hpp"
#include "fog/verifier.hpp"

using namespace fog;
using nlohmann::json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  return v ? std::strtoull(v, nullptr, 10) : fallback;
}

json report_to_json(const VerificationReport& r) {
  json j;
  j["scenario"] = r.scenario;
  j["configsTested"] = r.configsTested;
  j["configsWon"] = r.configsWon;
  j["maxPlies"] = r.maxPlies;
  j["maxWhiteMoves"] = r.maxWhiteMoves;
  j["nodes"] = r.nodes;
  j["wallTime"] = r.wallSeconds;
  j["failures"] = json::array();
  for (auto& [pos, trace] : r.failures) j["failures"].push_back({{"position", pos}, {"trace", trace}});
  j["whiteMoveHistogram"] = r.whiteMoveHistogram;
  return j;
}

void print_report(const VerificationReport& r, std::ostream& out) {
  out << "scenario " << r.scenario << "\n";
  out << "configsTested " << r.configsTested << "\n";
  out << "configsWon " << r.configsWon << "\n";
  out << "maxPlies " << r.maxPlies << "\n";
  out << "maxWhiteMoves " << r.maxWhiteMoves << "\n";
  out << "nodes " << r.nodes << "\n";
  out << "wallTime " << r.wallSeconds << "\n";
  for (auto& [pos, trace] : r.failures) out << "failure " << pos << "\n" << trace << "\n";
}

void write_report(const VerificationReport& r, const std::string& path) {
  if (path.empty()) return;
  std::ofstream f(path);
  f << report_to_json(r).dump() << "\n";
}

template <class Strategy>
int run_verify(const Strategy& strategy, Scenario sc, bool symmetry, int workers, int plyBound,
               std::uint64_t sample, const std::string& outputPath, bool structured) {
  auto configs = enumerate_initial_configs(sc, symmetry);
  if (sample && sample < configs.size()) configs.resize(sample);
  VerificationReport rep = verify_all(strategy, sc, configs, plyBound, workers);
  if (structured) std::cout << report_to_json(rep).dump() << "\n";
  else print_report(rep, std::cout);
  write_report(rep, outputPath);
  return rep.configsWon == rep.configsTested ? 0 : kExitFailure;
}

std::string render_fog_board(const Position& p, Color viewer) {
  const int n = p.n();
  Mask vis = visible_squares(p, viewer);
  std::string out;
  for (int r = n - 1; r >= 0; --r) {
    out += char('1' + r);
    out += ' ';
    for (int f = 0; f < n; ++f) {
      int s = square_at(f, r, n);
      char c = '~';  // fogged
      if (vis & bit(s)) {
        c = '.';
        if (s == p.whiteKing) c = 'K';
        else if (s == p.whiteQueen) c = 'Q';
        else if (s == p.whiteRook[0] || s == p.whiteRook[1]) c = 'R';
        else if (s == p.blackKing) c = 'k';
        else if (s == p.blackQueen) c = 'q';
        else if (s == p.blackRook[0] || s == p.blackRook[1]) c = 'r';
      }
      out += c;
      out += ' ';
    }
    out += '\n';
  }
  out += "  ";
  for (int f = 0; f < n; ++f) {
    out += char('a' + f);
    out += ' ';
  }
  out += '\n';
  return out;
}

// Informed defender for interactive play: prefers safe squares and free captures.
Move engine_black_move(const Position& p) {
  auto moves = legal_moves(p, Color::Black);
  Move best = moves.front();
  int bestScore = -10000;
  for (Move m : moves) {
    int score = 0;
    if (m.to == p.whiteKing) score = 1000;
    else {
      auto [q, st] = apply_move(p, m);
      (void)st;
      bool attacked = (attacked_squares(q, Color::White) & bit(m.to)) != 0;
      bool capture = (bit(m.to) & (p.whiteOcc() & ~bit(p.whiteKing))) != 0;
      if (capture && !attacked) score = 500;
      else if (!attacked) score = 100 - popcount(attacked_squares(q, Color::White));
      else score = -500;
    }
    if (score > bestScore) {
      bestScore = score;
      best = m;
    }
  }
  return best;
}

int run_play(const std::string& scenarioName, const std::string& humanSide,
             const std::string& startText) {
  auto parsed = parse_position(startText);
  if (!parsed.position) {
    std::cerr << "bad start position: " << parsed.error << "\n";
    return kExitUsage;
  }
  Position pos = *parsed.position;
  Color human = humanSide == "white" ? Color::White : Color::Black;
  KqkStrategy kqk;
  KrrkStrategy krrk;
  KqkState kqkState = kqk.initial(pos);
  KrrkState krrkState = krrk.initial(pos);
  BeliefState belief = initial_belief(pos.blackKing);
  std::cout << "You play " << humanSide
            << ". Moves look like e2e3; 'quit' exits. The board shows your side's view only.\n";
  while (true) {
    std::cout << "\n" << render_fog_board(pos, human);
    if (pos.sideToMove == human) {
      std::cout << "your move> " << std::flush;
      std::string text;
      if (!std::getline(std::cin, text)) return 0;
      if (text == "quit") return 0;
      if (text.size() < 4) {
        std::cout << "could not read a move\n";
        continue;
      }
      Move m{std::int8_t(parse_square(text.substr(0, 2), pos.n())),
             std::int8_t(parse_square(text.substr(2, 2), pos.n()))};
      if (!is_legal_move(pos, human, m)) {
        std::cout << "illegal move\n";
        continue;
      }
      auto [q, st] = apply_move(pos, m);
      pos = q;
      if (st != GameStatus::Ongoing) {
        std::cout << (st == GameStatus::WhiteWon ? "White" : "Black") << " wins.\n";
        return 0;
      }
    } else if (pos.sideToMove == Color::White) {
      Position whites = pos;
      whites.blackKing = belief.singleton() ? std::int8_t(lowest_square(belief.candidates))
                                            : std::int8_t(-1);
      Move m;
      try {
        if (scenarioName == "krrk") m = krrk.next(krrkState, whites, belief);
        else m = kqk.next(kqkState, whites, belief);
      } catch (const StrategyError& e) {
        std::cout << "engine resigns (" << e.what() << ")\n";
        return 0;
      }
      std::cout << "engine plays " << move_name(m, pos.n()) << "\n";
      auto [q, st] = apply_move(pos, m);
      pos = q;
      if (st == GameStatus::WhiteWon) {
        std::cout << "White wins.\n";
        return 0;
      }
      Position noBk = pos;
      noBk.blackKing = -1;
      Mask view = white_view(noBk);
      Mask next = belief.candidates & ~bit(pos.blackKing);
      if (view & bit(pos.blackKing)) belief = BeliefState{bit(pos.blackKing)};
      else belief = BeliefState{(belief.candidates | bit(pos.blackKing)) & ~view};
      (void)next;
    } else {
      // engine defends with the black king
      Move m = engine_black_move(pos);
      auto [q, st] = apply_move(pos, m);
      pos = q;
      std::cout << "engine moved its king (hidden unless you see it)\n";
      if (st == GameStatus::BlackWon) {
        std::cout << "Black wins: the White king fell.\n";
        return 0;
      }
      // keep the White engine's belief honest after Black's reply
      Position noBk = pos;
      noBk.blackKing = -1;
      auto outcomes = black_move_outcomes(belief, noBk);
      for (const auto& o : outcomes)
        if (o.status == GameStatus::Ongoing && !o.whitePieceCaptured &&
            o.belief.contains(pos.blackKing)) {
          belief = o.belief;
          break;
        }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fog of War chess endgames: strategies, verification, refutation"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "exhaustively verify a strategy");
  std::string verifyScenario;
  verify->add_option("scenario", verifyScenario, "kqk or krrk")->required();
  bool symmetry = false;
  int workers = int(std::thread::hardware_concurrency());
  int plyBound = int(env_u64("FOG_PLY_BOUND", 600));
  std::uint64_t sample = 0;
  std::string outputPath, format = "text";
  bool sabotage = false;
  verify->add_flag("--symmetry", symmetry, "one representative per symmetry orbit");
  verify->add_option("--workers", workers);
  verify->add_option("--ply-bound", plyBound);
  verify->add_option("--sample", sample, "verify only the first N configurations");
  verify->add_option("--output", outputPath, "write the structured report here");
  verify->add_option("--format", format, "text|json");
  verify->add_flag("--sabotage", sabotage, "break the guarded interrupt rule (expected to fail)");

  auto* refute = app.add_subcommand("refute", "solve the KR vs K belief game");
  std::string refuteScenario;
  refute->add_option("scenario", refuteScenario, "krk")->required();
  std::uint64_t stateBudget = env_u64("FOG_STATE_BUDGET", 100'000'000);
  int refuteWorkers = int(std::thread::hardware_concurrency());
  std::string refuteOutput;
  bool exportStates = false;
  refute->add_option("--state-budget", stateBudget);
  refute->add_option("--workers", refuteWorkers);
  refute->add_option("--output", refuteOutput);
  refute->add_flag("--export-states", exportStates, "append one line per solved state");

  auto* check = app.add_subcommand("check", "lemma enumerations");
  std::string checkWhat;
  check->add_option("what", checkWhat, "one-move")->required();

  auto* oracle = app.add_subcommand("oracle", "exact small-board belief solve");
  int oracleN = 4;
  std::string oraclePos;
  int oracleDepth = 128;
  oracle->add_option("--board-side,-n", oracleN)->check(CLI::Range(4, 8));
  oracle->add_option("--position", oraclePos, "e.g. 'Ka1 Qb2 kd4 w'")->required();
  oracle->add_option("--depth", oracleDepth, "ply budget");

  auto* play = app.add_subcommand("play", "interactive fog game in the terminal");
  std::string humanSide = "black", playScenario = "kqk", startText = "Kd4 Qd5 kh8 w";
  play->add_option("--human", humanSide, "white|black");
  play->add_option("--scenario", playScenario, "kqk|krrk");
  play->add_option("--start", startText);

  auto* report = app.add_subcommand("report", "re-render a stored verification report");
  std::string reportInput;
  report->add_option("--input", reportInput)->required();

  auto* trace = app.add_subcommand("trace", "verify one start, print the failing branch");
  std::string traceScenario = "kqk", tracePos;
  trace->add_option("--scenario", traceScenario, "kqk|krrk");
  trace->add_option("--position", tracePos)->required();
  int tracePly = 600;
  trace->add_option("--ply-bound", tracePly);
  bool traceSabotage = false;
  trace->add_flag("--sabotage", traceSabotage);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      if (verifyScenario == "kqk") {
        KqkStrategy strat;
        strat.sabotage = sabotage;
        return run_verify(strat, Scenario::KQvK, symmetry, workers, plyBound, sample, outputPath,
                          format == "json");
      }
      if (verifyScenario == "krrk") {
        KrrkStrategy strat;
        return run_verify(strat, Scenario::KRRvK, symmetry, workers, plyBound, sample, outputPath,
                          format == "json");
      }
      std::cerr << "unknown scenario " << verifyScenario << "\n";
      return kExitUsage;
    }
    if (refute->parsed()) {
      if (refuteScenario != "krk") {
        std::cerr << "unknown scenario " << refuteScenario << "\n";
        return kExitUsage;
      }
      auto roots = krk_hypothesis_states();
      auto fams = krk_lemma_families();
      std::vector<BGState> all = roots;
      for (auto& fam : fams) all.insert(all.end(), fam.states.begin(), fam.states.end());
      AttractorOptions opts;
      opts.stateBudget = stateBudget;
      opts.workers = refuteWorkers;
      AttractorSolution sol = solve_belief_game(8, all, opts);
      std::uint64_t safeRoots = 0;
      for (auto& r : roots)
        if (sol.classify(r) == BGValue::BlackSafe) ++safeRoots;
      auto witness = check_witnesses(sol);
      std::cout << "hypothesisStates " << roots.size() << "\n";
      std::cout << "blackSafe " << safeRoots << "\n";
      std::cout << "statesSolved " << sol.states.size() << "\n";
      std::cout << "fixpointPasses " << sol.passes << "\n";
      std::cout << "witnessChecks " << (witness.ok ? "pass" : "FAIL") << "\n";
      if (!witness.ok) std::cout << "witnessFailure " << witness.firstFailure << "\n";
      bool allSafe = safeRoots == roots.size();
      for (auto& fam : fams) {
        std::uint64_t famSafe = 0;
        for (auto& s : fam.states)
          if (sol.classify(s) == BGValue::BlackSafe) ++famSafe;
        std::cout << "family " << fam.name << " " << famSafe << "/" << fam.states.size()
                  << " BlackSafe\n";
        allSafe = allSafe && famSafe == fam.states.size();
      }
      if (!refuteOutput.empty()) {
        std::ofstream f(refuteOutput);
        json j;
        j["hypothesisStates"] = roots.size();
        j["blackSafe"] = safeRoots;
        j["statesSolved"] = sol.states.size();
        j["witnessChecks"] = witness.ok;
        f << j.dump() << "\n";
        if (exportStates)
          for (std::size_t i = 0; i < sol.states.size(); ++i)
            f << solver_line(sol.states[i], sol.value[i], 8) << "\n";
      }
      return allSafe && witness.ok ? 0 : kExitFailure;
    }
    if (check->parsed()) {
      if (checkWhat != "one-move") {
        std::cerr << "unknown check " << checkWhat << "\n";
        return kExitUsage;
      }
      OneMoveReport rep = no_immediate_win_check();
      std::cout << "positionsChecked " << rep.positionsChecked << "\n";
      std::cout << "counterexamples " << rep.counterexamples << "\n";
      if (rep.counterexamples) std::cout << "first " << rep.firstCounterexample << "\n";
      return rep.counterexamples == 0 ? 0 : kExitFailure;
    }
    if (oracle->parsed()) {
      auto parsed = parse_position(oraclePos, oracleN);
      if (!parsed.position) {
        std::cerr << "bad position: " << parsed.error << "\n";
        return kExitUsage;
      }
      BGState s;
      s.wk = parsed.position->whiteKing;
      s.wq = parsed.position->whiteQueen;
      s.wr0 = parsed.position->whiteRook[0];
      s.wr1 = parsed.position->whiteRook[1];
      s.toMove = parsed.position->sideToMove;
      s.belief = bit(parsed.position->blackKing);
      OracleResult r = solve_generic(oracleN, s, oracleDepth);
      if (r.budgetExceeded) {
        std::cerr << "state budget exceeded after " << r.statesExpanded << " expansions\n";
        return kExitResource;
      }
      std::cout << (r.value == BGValue::WhiteWin ? "WhiteWin" : "BlackSafe");
      if (r.value == BGValue::WhiteWin) std::cout << " in " << r.optimalDepth << " plies";
      std::cout << " (" << r.statesExpanded << " states)\n";
      return 0;
    }
    if (play->parsed()) return run_play(playScenario, humanSide, startText);
    if (report->parsed()) {
      std::ifstream f(reportInput);
      if (!f) {
        std::cerr << "cannot open " << reportInput << "\n";
        return kExitUsage;
      }
      std::string line;
      while (std::getline(f, line)) {
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) {
          std::cout << line << "\n";
          continue;
        }
        VerificationReport r;
        r.scenario = j.value("scenario", "");
        r.configsTested = j.value("configsTested", std::uint64_t(0));
        r.configsWon = j.value("configsWon", std::uint64_t(0));
        r.maxPlies = j.value("maxPlies", 0);
        r.maxWhiteMoves = j.value("maxWhiteMoves", 0);
        r.nodes = j.value("nodes", std::uint64_t(0));
        r.wallSeconds = j.value("wallTime", 0.0);
        print_report(r, std::cout);
      }
      return 0;
    }
    if (trace->parsed()) {
      auto parsed = parse_position(tracePos);
      if (!parsed.position) {
        std::cerr << "bad position: " << parsed.error << "\n";
        return kExitUsage;
      }
      VerifyOutcome out;
      if (traceScenario == "krrk") {
        KrrkStrategy strat;
        Verifier<KrrkStrategy> v(strat, tracePly);
        out = v.verify(*parsed.position);
      } else {
        KqkStrategy strat;
        strat.sabotage = traceSabotage;
        Verifier<KqkStrategy> v(strat, tracePly);
        out = v.verify(*parsed.position);
      }
      std::cout << (out.won ? "WON" : "FAILED") << " maxPlies=" << out.maxPlies
                << " nodes=" << out.nodes << "\n";
      if (!out.won) {
        std::cout << out.failureReason << "\n";
        for (auto& line : out.trace) std::cout << line << "\n";
      }
      return out.won ? 0 : kExitFailure;
    }
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  }
  return kExitUsage;
}
