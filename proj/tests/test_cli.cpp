#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  static int counter = 0;
  fs::path log = fs::path("cli_run_" + std::to_string(counter++) + ".log");
  std::string cmd = std::string(TYCAT_BIN) + " " + args + " > " + log.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  in.close();
  fs::remove(log);
  return r;
}

bool has(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("witt order reports both orders and writes certificates") {
    fs::remove_all("cli_certs");
    auto r = run("witt order a --cert-dir cli_certs");
    CHECK(r.code == 0);
    CHECK(has(r.out, "order_mod_witt=4"));
    CHECK(has(r.out, "order_raw=8"));
    CHECK(fs::exists("cli_certs/order-a-mod.json"));
    CHECK(fs::exists("cli_certs/order-a-raw.json"));

    auto chk = run("check-cert cli_certs/order-a-mod.json");
    CHECK(chk.code == 0);
    CHECK(has(chk.out, "ok=true"));

    // corrupt the claimed order and watch the check fail
    nlohmann::json j;
    {
      std::ifstream in("cli_certs/order-a-mod.json");
      in >> j;
    }
    j["order"] = 7;
    {
      std::ofstream out("cli_certs/tampered.json");
      out << j.dump(2);
    }
    auto bad = run("check-cert cli_certs/tampered.json");
    CHECK(bad.code == 2);
    CHECK(has(bad.out, "ok=false"));
    fs::remove_all("cli_certs");
  }

  TEST_CASE("output is byte-for-byte deterministic") {
    auto r1 = run("witt order ab --cert-dir cli_certs_det");
    auto r2 = run("witt order ab --cert-dir cli_certs_det");
    CHECK(r1.code == 0);
    CHECK(r1.out == r2.out);
    auto j1 = run("--json witt order ab --cert-dir cli_certs_det");
    auto j2 = run("--json witt order ab --cert-dir cli_certs_det");
    CHECK(j1.out == j2.out);
    CHECK(nlohmann::json::parse(j1.out).at("order_mod_witt") == 3);
    fs::remove_all("cli_certs_det");
  }

  TEST_CASE("embedded expectations back the verify flag") {
    auto r = run("witt order a --verify --cert-dir cli_certs_v");
    CHECK(r.code == 0);
    CHECK(has(r.out, "verify=ok"));
    auto rc = run("witt order C --verify --cert-dir cli_certs_v");
    CHECK(rc.code == 0);
    CHECK(has(rc.out, "order_mod_witt=1"));
    CHECK(has(rc.out, "order_raw=2"));
    CHECK(has(rc.out, "verify=ok"));
    fs::remove_all("cli_certs_v");
  }

  TEST_CASE("witt equal and classify") {
    auto r = run("witt equal preset:C preset:z");
    CHECK(r.code == 0);
    CHECK(has(r.out, "equal_raw=true"));
    CHECK(has(r.out, "equal_mod_witt=true"));
    auto c = run("witt classify --elements preset:a,preset:a");
    CHECK(c.code == 0);
    CHECK(has(c.out, "class_count=1"));
    CHECK(has(c.out, "order_mod_witt=4"));
  }

  TEST_CASE("small closure group") {
    auto r = run("witt group --generators a --cert-dir cli_certs_g");
    CHECK(r.code == 0);
    CHECK(has(r.out, "group_order=4"));
    CHECK(has(r.out, "abelian=true"));
    CHECK(has(r.out, "label=Z4"));
    auto chk = run("check-cert cli_certs_g/group-a.json");
    CHECK(chk.code == 0);
    CHECK(has(chk.out, "ok=true"));
    fs::remove_all("cli_certs_g");
  }

  TEST_CASE("verification suite criteria run standalone") {
    auto ok = run("verify --criterion 1");
    CHECK(ok.code == 0);
    CHECK(has(ok.out, "criterion 1: PASS"));
    CHECK(has(ok.out, "suite=PASS"));
    CHECK_FALSE(has(ok.out, "ms)"));  // header timings only on request
    auto timed = run("verify --criterion 1 --timings");
    CHECK(timed.code == 0);
    CHECK(has(timed.out, "ms)"));

    auto five = run("verify --criterion 5");
    CHECK(five.code == 0);
    CHECK(has(five.out, "criterion 5: PASS"));

    // the raw-order ledger disagrees with the computed closure; this stays red
    auto three = run("verify --criterion 3");
    CHECK(three.code == 2);
    CHECK(has(three.out, "criterion 3: FAIL"));
    CHECK(has(three.out, "suite=FAIL"));
  }

  TEST_CASE("caps turn into exit code three") {
    auto r = run("--cap-order 2 witt order a --cert-dir cli_certs_cap");
    CHECK(r.code == 3);
    fs::remove_all("cli_certs_cap");
  }

  TEST_CASE("parse failures turn into exit code four") {
    CHECK(run("witt order preset:nope").code == 4);
    CHECK(run("fusion-table --A Z2 --phi garble").code == 4);
    CHECK(run("--frobble").code == 4);
    CHECK(run("cohomology --group Z2 --module torus --degrees 1 --resolution what").code == 4);
    CHECK(run("--help").code == 0);
  }

  TEST_CASE("fusion table rows") {
    auto r = run("fusion-table --A Z2 --phi trivial");
    CHECK(r.code == 0);
    CHECK(has(r.out, "C3(0) x D3(2) -> D3(2)"));
    CHECK(has(r.out, "D3(3) x D3(2) -> D3(1)"));
    CHECK_FALSE(has(r.out, "Omega"));
    auto t = run("fusion-table --A Z2 --phi q:1/4");
    CHECK(t.code == 0);
    CHECK(has(t.out, "coeff=Vect^{Omega[1/4]}(A[0])"));
    auto n = run("fusion-table --A Z2 --phi \"q:1/4;aut:neg\"");
    CHECK(n.code == 0);
    CHECK(n.out == t.out);
  }

  TEST_CASE("bimodule form census") {
    auto r = run("ty-forms --A Z2 --verify");
    CHECK(r.code == 0);
    CHECK(has(r.out, "forms=32"));
    CHECK(has(r.out, "viable=16"));
    CHECK(has(r.out, "order_two=4"));
    CHECK(has(r.out, "orbit_sizes=4"));
    CHECK(has(r.out, "verify=ok"));
    auto o4 = run("ty forms --A Z4 --order-four");
    CHECK(o4.code == 0);
    CHECK(has(o4.out, "order_four=2"));
    CHECK(has(o4.out, "square_is_minus_identity=true"));
  }

  TEST_CASE("extension classification") {
    auto r = run("ty-classify --G Z2 --A Z2 --action swap --witt-order 2");
    CHECK(r.code == 0);
    CHECK(has(r.out, "action_order=2"));
    CHECK(has(r.out, "h3_fractionalization=0 (vanishes)"));
    CHECK(has(r.out, "h5_spt=Z2"));
    CHECK(has(r.out, "sigma_torsor_size=4"));
    CHECK(has(r.out, "label_count=8"));
    auto rej = run("ty classify --G Z4 --A Z4 --action swap --witt-order 4");
    CHECK(rej.code == 0);
    CHECK(has(rej.out, "rejected=NotSymplectic"));
  }

  TEST_CASE("cohomology against the embedded ledger") {
    auto r = run("cohomology --group Z2 --module torus --degrees 5,6 --verify");
    CHECK(r.code == 0);
    CHECK(has(r.out, "H5=Z2 verify=ok"));
    CHECK(has(r.out, "H6=0 verify=ok"));
    auto sw = run("cohomology --group Z2 --module swap --coefficients Z2 --degrees 3,4 --verify");
    CHECK(sw.code == 0);
    CHECK(has(sw.out, "H3=0 verify=ok"));
    CHECK(has(sw.out, "H4=0 verify=ok"));
  }

  TEST_CASE("config files set defaults") {
    {
      std::ofstream cfg("cli_cfg.conf");
      cfg << "# defaults for smoke runs\njson = true\n";
    }
    auto r = run("--config cli_cfg.conf witt equal preset:a preset:a");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("equal_raw") == true);
    {
      std::ofstream cfg("cli_cfg.conf");
      cfg << "frobble = 1\n";
    }
    CHECK(run("--config cli_cfg.conf witt equal preset:a preset:a").code == 4);
    fs::remove("cli_cfg.conf");
  }

  TEST_CASE("object files behave like their presets") {
    fs::path src = fs::path(TYCAT_PRESET_DIR) / "a2b.json";
    REQUIRE(fs::exists(src));
    fs::copy_file(src, "cli_obj.json", fs::copy_options::overwrite_existing);
    auto file_run = run("witt order cli_obj.json --cert-dir cli_certs_f");
    auto preset_run = run("witt order a2b --cert-dir cli_certs_f");
    CHECK(file_run.code == 0);
    CHECK(has(file_run.out, "order_mod_witt=2"));
    CHECK(has(file_run.out, "order_raw=4"));
    CHECK(has(preset_run.out, "order_mod_witt=2"));
    fs::remove("cli_obj.json");
    fs::remove_all("cli_certs_f");
  }
}
