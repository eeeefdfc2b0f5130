#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(IMX_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int raw = pclose(p);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string data(const char* name) { return std::string(IMX_DATA_DIR) + "/" + name; }

std::string temp_file(const char* name, const std::string& text) {
    const std::string path = std::string(IMX_TEST_TMP) + "/" + name;
    std::ofstream(path) << text;
    return path;
}

bool has(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("check") {
    const auto ok = run("check --kb " + data("registration_tax.kb"));
    CHECK(ok.status == 0);
    CHECK(has(ok.out, "5 symbols"));

    const auto unsat = run("check --kb " +
                           temp_file("unsat.kb", "vocabulary { env A : Bool }\ntheory environment { A. ~A. }\n"
                                                 "theory solution { }\n"));
    CHECK(unsat.status == 1);

    const auto bad = run("check --kb " + temp_file("bad.kb", "vocabulary { env A : Bool\n"));
    CHECK(bad.status == 2);
    CHECK(has(bad.out, "bad.kb:2:1:"));
}

TEST_CASE("solve lists the three solutions") {
    const auto r = run("solve --kb " + data("registration_tax.kb") + " --struct " + data("all_env_true.struct"));
    CHECK(r.status == 0);
    CHECK(has(r.out, "RegistrationType = Social\nTaxRate = 1\n"));
    CHECK(has(r.out, "RegistrationType = Modest\nTaxRate = 7\n"));
    CHECK(has(r.out, "RegistrationType = Other\nTaxRate = 10\n"));
    CHECK(has(r.out, "3 model(s)"));
    CHECK(has(run("solve --limit 1 --kb " + data("registration_tax.kb") + " --struct " + data("all_env_true.struct")).out,
              "1+ model(s)"));
}

TEST_CASE("propagate and relevance") {
    const auto p = run("propagate --kb " + data("registration_tax.kb") + " --struct " + data("low_rent_false.struct"));
    CHECK(p.status == 0);
    CHECK(has(p.out, "# safe consequences (environment)\nSocialHousing = false\n"));
    CHECK(has(p.out, "# decision consequences\nRegistrationType = Other\nTaxRate = 10\n"));

    const auto r = run("relevance --mode exact --kb " + data("registration_tax.kb") + " --struct " + data("low_rent_false.struct"));
    CHECK(r.status == 0);
    CHECK(has(r.out, "relevant: LowRent RegistrationType TaxRate\n"));
    CHECK(has(r.out, "irrelevant: SocialHousing LicensedSeller\n"));
    CHECK(has(r.out, "definite: yes"));
}

TEST_CASE("simulate writes csv") {
    const std::string csv = std::string(IMX_TEST_TMP) + "/rows.csv";
    const auto r = run("simulate --kb " + data("registration_tax.kb") + " --runs 4 --seed 3 --mode both --csv " + csv);
    CHECK(r.status == 0);
    CHECK(has(r.out, "average"));
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "instance,mode,entries,retractions,outcome");
    int rows = 0;
    for (std::string line; std::getline(in, line);) rows += !line.empty();
    CHECK(rows == 8);
}

TEST_CASE("usage errors") {
    CHECK(run("").status == 2);
    CHECK(run("solve").status == 2);
    CHECK(run("relevance --mode fuzzy --kb " + data("registration_tax.kb")).status == 2);
    CHECK(run("solve --kb /nonexistent/x.kb").status == 2);
}
