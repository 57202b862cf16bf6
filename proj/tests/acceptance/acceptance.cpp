// Runs the acceptance invocations through the CLI front-end and checks the
// results against independent references. Usage: acceptance <id>|all [dir]
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cli/app.hpp"

using nlohmann::json;

namespace {

const double kLn2 = std::log(2.0);

struct Verdict {
  bool pass = true;
  std::string detail;
  void need(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> args;
  double budget_seconds;
  std::function<void(const json&, Verdict&)> check;
};

double num(const json& j) { return j.get<double>(); }

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

void ground_state(const json& r, Verdict& v, const std::string& algo, double reference) {
  v.need(r.at("algo") == algo, "wrong algorithm");
  v.need(r.at("N") == 1000, "N != 1000");
  v.need(r.at("energy").at("count").get<int>() >= 50, "fewer than 50 draws");
  const double mean = num(r.at("energy").at("mean"));
  v.need(std::fabs(mean - reference) <= 0.01, "mean H/N " + fmt(mean) + " not within 0.01 of " + fmt(reference));
  v.detail = v.pass ? "mean H/N " + fmt(mean) : v.detail;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "greedy ground state",
       {"ground-state", "--algo", "greedy", "--N", "1000", "--samples", "50", "--seed", "7"},
       60,
       [](const json& r, Verdict& v) { ground_state(r, v, "greedy", -0.5319); }},
      {2, "spectral ground state",
       {"ground-state", "--algo", "spectral", "--N", "1000", "--samples", "50", "--seed", "7"},
       600,
       [](const json& r, Verdict& v) { ground_state(r, v, "spectral", -0.6366); }},
      {3, "high-temperature pressure",
       {"pressure", "--N", "16", "--beta", "0.5", "--h", "0", "--samples", "2000"},
       300,
       [](const json& r, Verdict& v) {
         const double annealed = kLn2 + 0.25 * 0.25;
         const double mean = num(r.at("pressure").at("mean"));
         v.need(r.at("pressure").at("count") == 2000, "draw count");
         v.need(std::fabs(mean - annealed) <= 0.02, "P_N " + fmt(mean) + " vs " + fmt(annealed));
         if (v.pass) v.detail = "P_N " + fmt(mean) + ", annealed " + fmt(annealed);
       }},
      {4, "Parisi solver exactness",
       {"parisi", "--x", "annealed", "--beta", "0.5,1,2", "--h", "0", "--rs-check", "0.2,0.5,0.8"},
       120,
       [](const json& r, Verdict& v) {
         // RS values from an adaptive high-precision quadrature
         const std::map<std::pair<double, double>, double> rs = {
             {{0.5, 0.2}, 0.75755996754561371246}, {{0.5, 0.5}, 0.76788797931077516288},
             {{0.5, 0.8}, 0.7875738321571307705},  {{1.0, 0.2}, 0.94507383215713080284},
             {{1.0, 0.5}, 0.96516190772002692704}, {{1.0, 0.8}, 1.0152013868126367745},
             {{2.0, 0.2}, 1.6452013868126369038},  {{2.0, 0.5}, 1.5853960462482251581},
             {{2.0, 0.8}, 1.6371869664268546858}};
         double worst_annealed = 0.0, worst_rs = 0.0;
         std::size_t annealed_rows = 0, rs_rows = 0;
         for (const auto& row : r.at("rows")) {
           const double beta = num(row.at("beta")), value = num(row.at("value"));
           const auto& x = row.at("params").at("x");
           const auto& q = row.at("params").at("q");
           if (q[0] == 0.0) {
             ++annealed_rows;
             worst_annealed = std::max(worst_annealed, std::fabs(value - (kLn2 + beta * beta / 4)));
           } else {
             ++rs_rows;
             v.need(x[0] == 1.0, "RS row without x = 1");
             worst_rs = std::max(worst_rs, std::fabs(value - rs.at({beta, num(q[0])})));
           }
         }
         v.need(annealed_rows == 3 && rs_rows == 9, "unexpected row count");
         v.need(worst_annealed <= 1e-8, "annealed error " + fmt(worst_annealed));
         v.need(worst_rs <= 1e-6, "RS error " + fmt(worst_rs));
         if (v.pass) v.detail = "annealed error " + fmt(worst_annealed) + ", RS error " + fmt(worst_rs);
       }},
      {5, "G functional against the Parisi functional",
       {"g-functional", "--source", "cascade", "--x", "0.5:0.4;0.3:0.2,0.7:0.6", "--m", "200", "--M", "2,8",
        "--beta", "1", "--h", "0", "--samples", "2000"},
       900,
       [](const json& r, Verdict& v) {
         // f(0,0) by nested quadrature; (beta^2/2) int q x(q) dq by hand
         const double f00_k1 = 0.4187511062922489, f00_k2 = 0.4333772628106407;
         double worst = 0.0;
         std::size_t rows = 0;
         for (const auto& row : r.at("rows")) {
           ++rows;
           const bool k1 = row.at("params").at("x").size() == 1;
           const double g1_ref = kLn2 + (k1 ? f00_k1 : f00_k2), g2_ref = k1 ? 0.105 : 0.136;
           v.need(row.at("samples") == 2000, "sample count");
           const double z1 = std::fabs(num(row.at("G1")) - g1_ref) / num(row.at("G1_se"));
           const double z2 = std::fabs(num(row.at("G2")) - g2_ref) / num(row.at("G2_se"));
           worst = std::max({worst, z1, z2});
           v.need(z1 <= 3.0, "G1 off by " + fmt(z1) + " sigma");
           v.need(z2 <= 3.0, "G2 off by " + fmt(z2) + " sigma");
         }
         v.need(rows == 4, "expected k = 1, 2 at M = 2, 8");
         for (const auto& m : r.at("m_independence")) {
           const double z = std::fabs(num(m.at("difference"))) / num(m.at("se"));
           worst = std::max(worst, z);
           v.need(z <= 3.0, "G_M depends on M (" + fmt(z) + " sigma)");
         }
         v.need(r.at("m_independence").size() == 2, "M-independence rows");
         if (v.pass) v.detail = "largest deviation " + fmt(worst) + " sigma";
       }},
      {6, "Guerra bound",
       {"guerra", "--N", "12,16", "--beta", "0.5,1,1.5,2", "--h", "0,0.3", "--x", "auto", "--k-max", "2",
        "--samples", "2000"},
       1800,
       [](const json& r, Verdict& v) {
         double worst = INFINITY;
         std::size_t rows = 0;
         for (const auto& row : r.at("rows")) {
           ++rows;
           const double z = num(row.at("gap")) / num(row.at("se"));
           worst = std::min(worst, z);
           v.need(num(row.at("gap")) >= -3.0 * num(row.at("se")),
                  "gap " + fmt(num(row.at("gap"))) + " at N=" + row.at("N").dump() + " beta=" + row.at("beta").dump());
         }
         v.need(rows == 16, "expected 16 (N, beta, h) rows");
         if (v.pass) v.detail = "smallest gap " + fmt(worst) + " se";
       }},
      {7, "superadditivity",
       {"superadd", "--pairs-N", "4,6,8", "--pairs-M", "4,6,4", "--beta", "0,0.5,1", "--h", "0", "--samples", "5000"},
       600,
       [](const json& r, Verdict& v) {
         std::size_t rows = 0;
         double worst = INFINITY;
         for (const auto& row : r.at("rows")) {
           ++rows;
           const double gap = num(row.at("gap")), se = num(row.at("se"));
           if (num(row.at("beta")) == 0.0) {
             v.need(gap == 0.0, "beta = 0 gap is " + fmt(gap));
           } else {
             worst = std::min(worst, gap / se);
             v.need(gap >= -3.0 * se, "gap " + fmt(gap) + " below -3 se");
           }
           v.need(row.at("joint").at("count") == 5000, "draw count");
         }
         v.need(rows == 9, "expected 9 rows");
         if (v.pass) v.detail = "smallest gap " + fmt(worst) + " se, beta = 0 gaps exact";
       }},
      {8, "REM laws",
       {"rem-qs", "--x", "0.5", "--law", "lognormal:0.5", "--form", "corrected", "--top", "20", "--trials", "2000"},
       600,
       [](const json& r, Verdict& v) {
         const auto& occ = r.at("occupation");
         const double expected = std::pow(num(occ.at("epsilon")), -0.5);
         v.need(std::fabs(num(occ.at("count").at("mean")) - expected) <= 3.0 * num(occ.at("count").at("se")),
                "occupation mean");
         const auto& qs = r.at("quasi_stationarity");
         v.need(qs.at("per_rank").size() == 20, "top 20 ranks");
         v.need(num(qs.at("combined_p")) > 0.01, "quasi-stationarity p " + fmt(num(qs.at("combined_p"))));
         // K = <g^x>^{1/x} = exp(x s^2 / 2) for ln g ~ N(0, s^2)
         v.need(std::fabs(num(qs.at("correction")) - std::exp(0.5 * 0.25 / 2)) < 1e-12, "correction K");
         v.need(num(r.at("negative_control").at("combined_p")) <= 0.01, "negative control did not fail");
         const double freq = num(r.at("tilt").at("frequency_a"));
         const double tilted = std::sqrt(2.0) / (std::sqrt(2.0) + std::sqrt(0.5));
         v.need(std::fabs(freq - tilted) <= 0.02, "tilted frequency " + fmt(freq));
         if (v.pass)
           v.detail = "QS p " + fmt(num(qs.at("combined_p"))) + ", control p " +
                      fmt(num(r.at("negative_control").at("combined_p"))) + ", tilt " + fmt(freq);
       }},
      {9, "cascade overlap law",
       {"cascade-overlap", "--x", "0.5:0.4;0.3:0.2,0.7:0.6", "--m", "200", "--cascades", "4000", "--pairs", "50"},
       600,
       [](const json& r, Verdict& v) {
         double dev = 0.0, bias = 0.0;
         std::size_t rows = 0;
         for (const auto& row : r.at("rows")) {
           ++rows;
           const auto& x = row.at("params").at("x");
           const auto& cdf = row.at("empirical_cdf");
           for (std::size_t j = 0; j < x.size(); ++j) dev = std::max(dev, std::fabs(num(cdf[j]) - num(x[j])));
           bias = std::max(bias, num(row.at("bias_max_abs")));
         }
         v.need(rows == 2, "expected k = 1 and k = 2");
         v.need(dev <= 0.02, "CDF deviation " + fmt(dev));
         v.need(bias < 0.005, "m-doubling bias " + fmt(bias));
         if (v.pass) v.detail = "CDF deviation " + fmt(dev) + ", bias " + fmt(bias);
       }},
      {10, "Gaussian differentiation identity",
       {"diff-identity", "--t", "0.5", "--samples", "1000000"},
       300,
       [](const json& r, Verdict& v) {
         std::size_t quad = 0, mc = 0;
         for (const auto& row : r.at("rows")) {
           const double res = num(row.at("residual"));
           if (row.at("method") == "quadrature") {
             ++quad;
             v.need(res <= 1e-6, row.at("case").get<std::string>() + " residual " + fmt(res));
           } else {
             ++mc;
             v.need(row.at("samples") == 1000000, "MC sample count");
             v.need(res < 3.0 * num(row.at("se")), row.at("case").get<std::string>() + " residual " + fmt(res));
           }
         }
         v.need(quad >= 1 && mc >= 1, "missing cases");
         if (v.pass) v.detail = std::to_string(quad) + " quadrature and " + std::to_string(mc) + " Monte Carlo cases";
       }},
      {11, "superadditive sequence utilities",
       {"appendix-b", "--length", "200", "--window", "10", "--c", "0.75"},
       60,
       [](const json& r, Verdict& v) {
         v.need(num(r.at("linear").at("sup_estimate")) == 0.75, "linear sup");
         v.need(num(r.at("linear").at("incremental_estimate")) == 0.75, "linear increment");
         v.need(r.at("linear").at("violation_count") == 0, "linear violations");
         const double last = 1.0 - 1.0 / std::sqrt(200.0);
         v.need(std::fabs(num(r.at("n_minus_sqrt_n").at("sup_estimate")) - last) <= 1e-14, "N - sqrt N sup");
         v.need(r.at("n_minus_sqrt_n").at("violation_count") == 0, "N - sqrt N violations");
         v.need(r.at("alternating").at("violation_count").get<int>() > 0, "counterexample not detected");
         if (v.pass) v.detail = "sup(N - sqrt N) = " + fmt(last);
       }},
  };
  return list;
}

struct Run {
  int code = 0;
  std::string out, err;
  double seconds = 0.0;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "sglab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const auto t0 = std::chrono::steady_clock::now();
  Run r;
  r.code = sglab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

bool report(int id, const std::string& title, const Verdict& v) {
  std::cout << "criterion " << id << ": " << (v.pass ? "PASS" : "FAIL") << "  " << title << "  (" << v.detail
            << ")" << std::endl;
  return v.pass;
}

bool run_criterion(const Criterion& c, const std::filesystem::path& dir) {
  const auto r = invoke(c.args);
  Verdict v;
  if (r.code != 0) {
    v.need(false, "exit code " + std::to_string(r.code) + ": " + r.err);
    return report(c.id, c.title, v);
  }
  std::ofstream(dir / ("criterion_" + std::to_string(c.id) + ".json"), std::ios::binary) << r.out;
  try {
    const auto j = json::parse(r.out);
    c.check(j.at("result"), v);
    v.need(j.at("pass").get<bool>(), "command self-check failed");
  } catch (const std::exception& e) {
    v.need(false, std::string("malformed output: ") + e.what());
  }
  v.need(r.seconds <= c.budget_seconds, "took " + fmt(r.seconds) + " s, budget " + fmt(c.budget_seconds) + " s");
  v.detail += ", " + fmt(r.seconds) + " s";
  return report(c.id, c.title, v);
}

// Re-runs every invocation with a different worker count and compares the
// bytes with the saved output (produced first if missing).
bool run_determinism(const std::filesystem::path& dir) {
  Verdict v;
  std::size_t same = 0;
  for (const auto& c : criteria()) {
    const auto saved = dir / ("criterion_" + std::to_string(c.id) + ".json");
    if (!std::filesystem::exists(saved)) {
      const auto first = invoke(c.args);
      std::ofstream(saved, std::ios::binary) << first.out;
    }
    auto args = c.args;
    args.insert(args.end(), {"--threads", "3"});
    const auto again = invoke(args);
    if (again.code == 0 && again.out == read_file(saved))
      ++same;
    else
      v.need(false, "criterion " + std::to_string(c.id) + " output differs");
  }
  v.detail += (v.detail.empty() ? "" : ", ") + std::to_string(same) + "/" + std::to_string(criteria().size()) +
              " outputs byte-identical";
  return report(12, "determinism", v);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <1-12|all> [output-dir]\n";
    return 2;
  }
  const std::string which = argv[1];
  const std::filesystem::path dir = argc > 2 ? argv[2] : "acceptance_outputs";
  std::filesystem::create_directories(dir);
  bool ok = true;
  for (const auto& c : criteria())
    if (which == "all" || which == std::to_string(c.id)) ok = run_criterion(c, dir) && ok;
  if (which == "all" || which == "12") ok = run_determinism(dir) && ok;
  return ok ? 0 : 1;
}
