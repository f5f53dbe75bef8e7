// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <qsd/fcidump.hpp>

#include "oracles/oracles.hpp"
#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace qsd;
using Catch::Approx;

namespace {

const std::string kToy = R"( &FCI NORB=1,NELEC=2,MS2=0,
  ORBSYM=1,
  ISYM=1,
 &END
  0.675  1 1 1 1
 -1.25   1 1 0 0
  0.71   0 0 0 0
)";

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("parse: one-orbital toy transcribes fields", "[fcidump]") {
    const auto ints = parse_fcidump(kToy);
    CHECK(ints.n_orbitals() == 1);
    CHECK(ints.n_alpha() == 1);
    CHECK(ints.n_beta() == 1);
    CHECK(ints.h1(0, 0) == -1.25);
    CHECK(ints.eri(0, 0, 0, 0) == 0.675);
    CHECK(ints.core_energy() == 0.71);
}

TEST_CASE("toy fixture file matches the inline text", "[fcidump]") {
    const auto a = read_fcidump(testing::data_path("toy_1orb.fcidump"));
    CHECK(a.h1(0, 0) == -1.25);
    CHECK(a.eri(0, 0, 0, 0) == 0.675);
    CHECK(a.core_energy() == 0.71);
}

TEST_CASE("parse: two-body record fills all eight images", "[fcidump]") {
    const auto ints = parse_fcidump(" &FCI NORB=2,NELEC=2 &END\n 0.5 1 2 1 2\n");
    for (auto [p, q, r, s] : MolecularIntegrals::images(0, 1, 0, 1)) CHECK(ints.eri(p, q, r, s) == 0.5);
    CHECK(ints.eri(0, 0, 1, 1) == 0.0);
    ints.validate();
}

TEST_CASE("parse: header variants", "[fcidump]") {
    SECTION("slash terminator and lowercase keys") {
        const auto ints = parse_fcidump("&FCI norb=3, nelec=3, ms2=1\n/\n 1.0D-01 1 1 0 0\n");
        CHECK(ints.n_alpha() == 2);
        CHECK(ints.n_beta() == 1);
        CHECK(ints.h1(0, 0) == Approx(0.1));
    }
    SECTION("orbital-energy records are ignored") {
        const auto ints = parse_fcidump("&FCI NORB=2,NELEC=2 &END\n -0.5 1 0 0 0\n 0.2 2 1 0 0\n");
        CHECK(ints.h1(0, 0) == 0.0);
        CHECK(ints.h1(0, 1) == 0.2);
        CHECK(ints.h1(1, 0) == 0.2);
    }
    SECTION("agreeing duplicates are accepted") {
        const auto ints = parse_fcidump("&FCI NORB=2,NELEC=2 &END\n 0.3 1 2 1 2\n 0.3 2 1 2 1\n");
        CHECK(ints.eri(1, 0, 0, 1) == 0.3);
    }
}

TEST_CASE("parse: errors", "[fcidump]") {
    CHECK_THROWS_AS(parse_fcidump("NORB=1 NELEC=2\n"), ParseError);
    CHECK_THROWS_AS(parse_fcidump("&FCI NELEC=2 &END\n"), ParseError);
    CHECK_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=3 &END\n"), ParseError);
    CHECK_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=2 &END\n 0.1 1 3 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=2 &END\n 0.1 1 1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=2 &END\n abc 1 1 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=2 &END\n 0.1 1 0 1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=2 &END\n 0.1 1 2 1 2\n 0.2 2 1 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=6 &END\n"), ParseError);
    CHECK_THROWS_AS(read_fcidump(testing::data_path("does_not_exist.fcidump")), ParseError);
}

TEST_CASE("round trip through the writer", "[fcidump]") {
    std::mt19937_64 rng(11);
    for (int n : {1, 2, 3, 5}) {
        const auto a = oracle::random_integrals(n, n / 2 + 1, n / 2, rng);
        const auto b = parse_fcidump(write_fcidump(a));
        REQUIRE(b.n_orbitals() == n);
        CHECK(b.n_alpha() == a.n_alpha());
        CHECK(b.n_beta() == a.n_beta());
        CHECK(std::abs(b.core_energy() - a.core_energy()) < 1e-14);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                CHECK(std::abs(b.h1(p, q) - a.h1(p, q)) < 1e-14);
                for (int r = 0; r < n; ++r)
                    for (int s = 0; s < n; ++s) CHECK(std::abs(b.eri(p, q, r, s) - a.eri(p, q, r, s)) < 1e-14);
            }
    }
}

TEST_CASE("record order does not matter", "[fcidump]") {
    const std::string text = slurp(testing::data_path("h4_chain_sto3g.fcidump"));
    const auto body = text.find("&END") + 4;
    std::vector<std::string> lines;
    std::istringstream in(text.substr(body));
    for (std::string l; std::getline(in, l);)
        if (!l.empty()) lines.push_back(l);
    std::mt19937_64 rng(3);
    std::shuffle(lines.begin(), lines.end(), rng);
    std::string shuffled = text.substr(0, body) + "\n";
    for (const auto& l : lines) shuffled += l + "\n";

    const auto a = parse_fcidump(text), b = parse_fcidump(shuffled);
    const int n = a.n_orbitals();
    CHECK(a.core_energy() == b.core_energy());
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            CHECK(a.h1(p, q) == b.h1(p, q));
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) CHECK(a.eri(p, q, r, s) == b.eri(p, q, r, s));
        }
}

TEST_CASE("water active space fixture", "[fcidump]") {
    const auto ints = read_fcidump(testing::data_path("h2o_sto3g_8e6o.fcidump"));
    CHECK(ints.n_orbitals() == 6);
    CHECK(ints.n_alpha() == 4);
    CHECK(ints.n_beta() == 4);
    ints.validate();
}
