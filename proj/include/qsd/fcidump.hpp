// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fcidump.hpp
 * @brief Active-space molecular integrals and the FCIDUMP text format.
 *
 * Conventions:
 *  - Spatial orbitals are 0-based internally, 1-based in FCIDUMP records.
 *  - Two-electron integrals are stored in chemist notation (pq|rs) with all
 *    eight permutational images filled.
 *  - Header keys ORBSYM/ISYM are accepted and ignored.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace qsd {

/// Malformed or inconsistent input data.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MolecularIntegrals {
public:
    MolecularIntegrals() = default;

    /// Zero integrals for the given active space.
    MolecularIntegrals(int n_orbitals, int n_alpha, int n_beta, double core_energy = 0.0)
        : n_orb_(n_orbitals), n_alpha_(n_alpha), n_beta_(n_beta), core_(core_energy),
          h1_(static_cast<std::size_t>(n_orbitals * n_orbitals), 0.0),
          h2_(static_cast<std::size_t>(n_orbitals) * n_orbitals * n_orbitals * n_orbitals, 0.0) {
        if (n_orbitals < 1 || n_orbitals > 32)
            throw std::invalid_argument("n_orbitals must lie in [1, 32]");
        if (n_alpha < 0 || n_beta < 0 || n_alpha > n_orbitals || n_beta > n_orbitals)
            throw std::invalid_argument("electron counts must lie in [0, n_orbitals]");
    }

    int n_orbitals() const noexcept { return n_orb_; }
    int n_alpha() const noexcept { return n_alpha_; }
    int n_beta() const noexcept { return n_beta_; }
    double core_energy() const noexcept { return core_; }

    double h1(int p, int q) const noexcept { return h1_[idx2(p, q)]; }
    double eri(int p, int q, int r, int s) const noexcept { return h2_[idx4(p, q, r, s)]; }

    void set_core_energy(double e) noexcept { core_ = e; }

    /// Set h_pq and h_qp.
    void set_h1(int p, int q, double v) {
        check(p); check(q);
        h1_[idx2(p, q)] = v;
        h1_[idx2(q, p)] = v;
    }

    /// Set (pq|rs) and its seven symmetry images.
    void set_eri(int p, int q, int r, int s, double v) {
        check(p); check(q); check(r); check(s);
        for (auto [a, b, c, d] : images(p, q, r, s)) h2_[idx4(a, b, c, d)] = v;
    }

    /// Throws ParseError unless the symmetry invariants hold within tol.
    void validate(double tol = 1e-10) const {
        const int n = n_orb_;
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                if (std::abs(h1(p, q) - h1(q, p)) >= tol)
                    throw ParseError("one-body integrals are not symmetric");
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                for (int r = 0; r < n; ++r)
                    for (int s = 0; s < n; ++s) {
                        const double v = eri(p, q, r, s);
                        for (auto [a, b, c, d] : images(p, q, r, s))
                            if (std::abs(eri(a, b, c, d) - v) >= tol)
                                throw ParseError("two-body integrals violate 8-fold symmetry");
                    }
    }

    /// Canonical representative of the 8-fold orbit of (pq|rs).
    static std::array<int, 4> canonical(int p, int q, int r, int s) noexcept {
        std::array<int, 4> best{p, q, r, s};
        for (auto img : images(p, q, r, s)) best = std::max(best, img);
        return best;
    }

    static std::array<std::array<int, 4>, 8> images(int p, int q, int r, int s) noexcept {
        return {{{p, q, r, s}, {q, p, r, s}, {p, q, s, r}, {q, p, s, r},
                 {r, s, p, q}, {s, r, p, q}, {r, s, q, p}, {s, r, q, p}}};
    }

private:
    std::size_t idx2(int p, int q) const noexcept {
        return static_cast<std::size_t>(p) * n_orb_ + q;
    }
    std::size_t idx4(int p, int q, int r, int s) const noexcept {
        const std::size_t n = n_orb_;
        return ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
    }
    void check(int p) const {
        if (p < 0 || p >= n_orb_) throw std::out_of_range("orbital index out of range");
    }

    int n_orb_ = 0;
    int n_alpha_ = 0;
    int n_beta_ = 0;
    double core_ = 0.0;
    std::vector<double> h1_;
    std::vector<double> h2_;
};

namespace detail {

inline int header_int(const std::string& header, const std::string& key, bool& found) {
    const std::regex re("\\b" + key + "\\s*=\\s*([-+]?\\d+)", std::regex::icase);
    std::smatch m;
    found = std::regex_search(header, m, re);
    return found ? std::stoi(m[1].str()) : 0;
}

inline double parse_real(std::string tok, std::size_t line_no) {
    std::replace(tok.begin(), tok.end(), 'D', 'E');
    std::replace(tok.begin(), tok.end(), 'd', 'e');
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size())
        throw ParseError("FCIDUMP line " + std::to_string(line_no) + ": bad value '" + tok + "'");
    return v;
}

inline int parse_index(const std::string& tok, std::size_t line_no) {
    std::size_t used = 0;
    long v = -1;
    try {
        v = std::stol(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size() || v < 0)
        throw ParseError("FCIDUMP line " + std::to_string(line_no) + ": bad index '" + tok + "'");
    return static_cast<int>(v);
}

}  // namespace detail

/**
 * Parse an FCIDUMP document.
 *
 * Records are `value i j k l` with 1-based indices: all four nonzero is a
 * two-body integral, `i j 0 0` one-body, `0 0 0 0` the core energy, and
 * `i 0 0 0` an orbital energy (ignored).  Repeated records must agree on the
 * value within 1e-10.
 */
inline MolecularIntegrals parse_fcidump(const std::string& text) {
    // Header runs from &FCI to &END or a lone '/'.
    const auto start = text.find("&FCI");
    if (start == std::string::npos) throw ParseError("FCIDUMP: missing &FCI header");
    std::size_t hdr_end = std::string::npos;
    std::size_t body = std::string::npos;
    {
        const std::regex end_re("(&END|/)", std::regex::icase);
        std::smatch m;
        const std::string rest = text.substr(start);
        if (std::regex_search(rest, m, end_re)) {
            hdr_end = start + static_cast<std::size_t>(m.position(0));
            body = hdr_end + static_cast<std::size_t>(m.length(0));
        }
    }
    if (hdr_end == std::string::npos) throw ParseError("FCIDUMP: unterminated header");
    const std::string header = text.substr(start, hdr_end - start);

    bool has_norb = false, has_nelec = false, has_ms2 = false;
    const int norb = detail::header_int(header, "NORB", has_norb);
    const int nelec = detail::header_int(header, "NELEC", has_nelec);
    const int ms2 = detail::header_int(header, "MS2", has_ms2);
    if (!has_norb || !has_nelec) throw ParseError("FCIDUMP: header lacks NORB or NELEC");
    if (norb < 1 || norb > 32) throw ParseError("FCIDUMP: NORB out of supported range [1, 32]");
    if (!has_ms2 && nelec % 2 != 0) throw ParseError("FCIDUMP: odd NELEC requires MS2");
    if ((nelec + ms2) % 2 != 0 || nelec < 0) throw ParseError("FCIDUMP: inconsistent NELEC/MS2");
    const int n_alpha = (nelec + ms2) / 2;
    const int n_beta = (nelec - ms2) / 2;
    if (n_alpha < 0 || n_beta < 0 || n_alpha > norb || n_beta > norb)
        throw ParseError("FCIDUMP: electron counts incompatible with NORB");

    MolecularIntegrals ints(norb, n_alpha, n_beta);
    std::map<std::array<int, 4>, double> seen;

    std::istringstream in(text.substr(body));
    std::string line;
    std::size_t line_no = static_cast<std::size_t>(std::count(text.begin(), text.begin() + body, '\n')) + 1;
    for (; std::getline(in, line); ++line_no) {
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() != 5)
            throw ParseError("FCIDUMP line " + std::to_string(line_no) + ": expected 5 fields");
        const double v = detail::parse_real(tok[0], line_no);
        std::array<int, 4> ix{};
        for (int k = 0; k < 4; ++k) {
            ix[k] = detail::parse_index(tok[k + 1], line_no);
            if (ix[k] > norb)
                throw ParseError("FCIDUMP line " + std::to_string(line_no) + ": index exceeds NORB");
        }
        const auto [i, j, k, l] = ix;
        std::array<int, 4> key{};
        int kind = 0;  // 2: two-body, 1: one-body, 0: core, -1: ignored
        if (i && j && k && l) {
            kind = 2;
            key = MolecularIntegrals::canonical(i, j, k, l);
        } else if (i && j && !k && !l) {
            kind = 1;
            key = {std::max(i, j), std::min(i, j), 0, 0};
        } else if (!i && !j && !k && !l) {
            kind = 0;
            key = {0, 0, 0, 0};
        } else if (i && !j && !k && !l) {
            kind = -1;
        } else {
            throw ParseError("FCIDUMP line " + std::to_string(line_no) + ": unrecognized index pattern");
        }
        if (kind < 0) continue;
        if (auto it = seen.find(key); it != seen.end()) {
            if (std::abs(it->second - v) > 1e-10)
                throw ParseError("FCIDUMP line " + std::to_string(line_no) + ": conflicting duplicate record");
            continue;
        }
        seen.emplace(key, v);
        if (kind == 2)
            ints.set_eri(i - 1, j - 1, k - 1, l - 1, v);
        else if (kind == 1)
            ints.set_h1(i - 1, j - 1, v);
        else
            ints.set_core_energy(v);
    }
    return ints;
}

inline MolecularIntegrals read_fcidump(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open FCIDUMP file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_fcidump(ss.str());
}

/// Serialize one record per symmetry-unique nonzero integral.
inline std::string write_fcidump(const MolecularIntegrals& ints, double zero_tol = 0.0) {
    const int n = ints.n_orbitals();
    std::string out;
    char buf[128];
    std::snprintf(buf, sizeof buf, " &FCI NORB=%d,NELEC=%d,MS2=%d,\n  ORBSYM=", n,
                  ints.n_alpha() + ints.n_beta(), ints.n_alpha() - ints.n_beta());
    out += buf;
    for (int p = 0; p < n; ++p) out += "1,";
    out += "\n  ISYM=1,\n &END\n";
    auto emit = [&](double v, int i, int j, int k, int l) {
        std::snprintf(buf, sizeof buf, "%23.15E %4d %4d %4d %4d\n", v, i, j, k, l);
        out += buf;
    };
    for (int p = 0; p < n; ++p)
        for (int q = 0; q <= p; ++q)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s <= r; ++s) {
                    if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
                    const double v = ints.eri(p, q, r, s);
                    if (std::abs(v) > zero_tol) emit(v, p + 1, q + 1, r + 1, s + 1);
                }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q <= p; ++q)
            if (std::abs(ints.h1(p, q)) > zero_tol) emit(ints.h1(p, q), p + 1, q + 1, 0, 0);
    emit(ints.core_energy(), 0, 0, 0, 0);
    return out;
}

}  // namespace qsd
