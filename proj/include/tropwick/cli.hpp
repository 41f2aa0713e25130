#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tropwick/delta_matroid.hpp"
#include "tropwick/enumerate.hpp"
#include "tropwick/io.hpp"
#include "tropwick/plucker.hpp"
#include "tropwick/realization.hpp"
#include "tropwick/subdivision.hpp"
#include "tropwick/wick.hpp"

namespace tropwick {
namespace cli {

using nlohmann::json;

namespace detail {

inline std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return in;
}

inline TropicalWickVector load_wick(const std::string& path, int max_n = kMaxGroundSize) {
    auto in = detail::open_or_throw(path);
    io::WickFile file = io::read_wick_vector(in);
    if (file.signed_ground)
        throw std::invalid_argument(path + ": expected an unsigned ground set here");
    if (file.n > max_n) throw ScaleError(path + ": ground set exceeds the scale guard");
    return TropicalWickVector(file.n, std::move(file.entries));
}

inline TropicalPluckerVector load_plucker(const std::string& path) {
    auto in = detail::open_or_throw(path);
    io::WickFile file = io::read_wick_vector(in);
    return TropicalPluckerVector(file.n, std::move(file.entries), file.signed_ground);
}

inline SignedVector load_one_vector(const std::string& path, int n) {
    auto in = detail::open_or_throw(path);
    auto vecs = io::read_signed_vectors(in, n);
    if (vecs.empty()) throw std::invalid_argument(path + ": no vector found");
    return vecs.front();
}

inline std::string functional_str(const std::vector<Rational>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += to_string(v[i]);
    }
    return out + ")";
}

}  // namespace detail

/// Runs one subcommand. Exit conventions: 0 = predicate true / success,
/// 1 = predicate false, 2 = input or scale error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact tools for tropical Wick vectors and even Delta-matroids"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    int exit_code = 0;
    json report;
    auto predicate = [&](bool value) {
        report["result"] = value;
        exit_code = value ? 0 : 1;
    };

    // ----- check-wick ---------------------------------------------------
    auto* sc_check_wick = app.add_subcommand("check-wick", "tropical Wick relation check");
    std::string cw_file;
    bool cw_local = false, cw_full = false;
    sc_check_wick->add_option("file", cw_file)->required();
    auto* cw_local_flag = sc_check_wick->add_flag("--local", cw_local, "local 4-term criterion");
    sc_check_wick->add_flag("--full", cw_full, "all relation instances")->excludes(cw_local_flag);
    sc_check_wick->callback([&] {
        TropicalWickVector p = detail::load_wick(cw_file);
        bool result = cw_full ? check_wick_full(p) : check_wick_local(p);
        report["command"] = "check-wick";
        report["mode"] = cw_full ? "full" : "local";
        predicate(result);
        if (!as_json) out << (result ? "true" : "false") << "\n";
    });

    // ----- check-plucker ------------------------------------------------
    auto* sc_check_plucker = app.add_subcommand("check-plucker", "tropical Pluecker check");
    std::string cp_file;
    sc_check_plucker->add_option("file", cp_file)->required();
    sc_check_plucker->callback([&] {
        auto in = detail::open_or_throw(cp_file);
        io::WickFile file = io::read_wick_vector(in);
        report["command"] = "check-plucker";
        bool equicardinal = true;
        int size = popcount(file.entries.begin()->first);
        for (const auto& [s, v] : file.entries)
            if (popcount(s) != size) equicardinal = false;
        bool result = false;
        if (equicardinal) {
            TropicalPluckerVector p(file.n, file.entries, file.signed_ground);
            bool matroid = support_is_matroid(p);
            bool three_term = three_term_relations_hold(p);
            report["support_is_matroid"] = matroid;
            report["three_term_relations"] = three_term;
            result = matroid && three_term;
        } else {
            report["support_is_matroid"] = false;
        }
        report["equicardinal"] = equicardinal;
        predicate(result);
        if (!as_json) out << (result ? "true" : "false") << "\n";
    });

    // ----- circuits / cocircuits -----------------------------------------
    std::string circ_file;
    for (bool cocirc : {false, true}) {
        auto* sc = app.add_subcommand(cocirc ? "cocircuits" : "circuits",
                                      cocirc ? "canonical cocircuit vectors"
                                             : "canonical circuit vectors");
        auto* opt = sc->add_option("file", circ_file);
        opt->required();
        sc->callback([&, cocirc] {
            TropicalWickVector p = detail::load_wick(circ_file);
            auto list = cocirc ? all_cocircuits(p) : all_circuits(p);
            report["command"] = cocirc ? "cocircuits" : "circuits";
            json items = json::array();
            for (const WickCircuit& c : list) {
                items.push_back(io::signed_vector_line(c.vec));
                if (!as_json) out << io::signed_vector_line(c.vec) << "\n";
            }
            report["vectors"] = items;
        });
    }

    // ----- cocycle-test ---------------------------------------------------
    auto* sc_cocycle = app.add_subcommand("cocycle-test", "is the vector a cocycle of p");
    std::string ct_wick, ct_vec;
    sc_cocycle->add_option("wick-file", ct_wick)->required();
    sc_cocycle->add_option("vector-file", ct_vec)->required();
    sc_cocycle->callback([&] {
        TropicalWickVector p = detail::load_wick(ct_wick);
        SignedVector x = detail::load_one_vector(ct_vec, p.n());
        bool result = is_cocycle(p, x);
        report["command"] = "cocycle-test";
        predicate(result);
        if (!as_json) out << (result ? "true" : "false") << "\n";
    });

    // ----- decompose ------------------------------------------------------
    auto* sc_decompose = app.add_subcommand("decompose", "cocycle as a cocircuit combination");
    std::string dc_wick, dc_vec;
    sc_decompose->add_option("wick-file", dc_wick)->required();
    sc_decompose->add_option("vector-file", dc_vec)->required();
    sc_decompose->callback([&] {
        TropicalWickVector p = detail::load_wick(dc_wick);
        SignedVector x = detail::load_one_vector(dc_vec, p.n());
        auto terms = cocycle_decompose(p, x);
        report["command"] = "decompose";
        json items = json::array();
        for (const CocycleTerm& t : terms) {
            json item;
            item["lambda"] = to_string(t.shift);
            item["cocircuit"] = io::signed_vector_line(t.cocircuit.vec);
            items.push_back(item);
            if (!as_json)
                out << to_string(t.shift) << " | " << io::signed_vector_line(t.cocircuit.vec)
                    << "\n";
        }
        report["terms"] = items;
    });

    // ----- subdivision ----------------------------------------------------
    auto* sc_subdivision = app.add_subcommand("subdivision", "regular subdivision of p");
    std::string sd_file;
    bool sd_cells = false, sd_verify = false;
    sc_subdivision->add_option("file", sd_file)->required();
    auto* sd_cells_flag = sc_subdivision->add_flag("--cells", sd_cells, "list maximal cells");
    sc_subdivision->add_flag("--verify", sd_verify, "even Delta-matroid subdivision check")
        ->excludes(sd_cells_flag);
    sc_subdivision->callback([&] {
        TropicalWickVector p = detail::load_wick(sd_file, kMaxSubdivisionGroundSize);
        report["command"] = "subdivision";
        if (sd_verify) {
            bool result = is_even_dm_subdivision(p);
            report["mode"] = "verify";
            predicate(result);
            if (!as_json) out << (result ? "true" : "false") << "\n";
            return;
        }
        report["mode"] = "cells";
        json items = json::array();
        for (const SubdivisionCell& cell : maximal_cells(p)) {
            std::string verts;
            json jverts = json::array();
            for (SubsetMask s : cell.vertices) {
                if (!verts.empty()) verts += ' ';
                verts += io::subset_literal(s, p.n(), false);
                jverts.push_back(io::subset_literal(s, p.n(), false));
            }
            json jcell;
            jcell["vertices"] = jverts;
            jcell["functional"] = detail::functional_str(cell.functional);
            items.push_back(jcell);
            if (!as_json)
                out << verts << " | v = " << detail::functional_str(cell.functional) << "\n";
        }
        report["cells"] = items;
    });

    // ----- dm ---------------------------------------------------------------
    auto* sc_dm = app.add_subcommand("dm", "even Delta-matroid operations");
    std::string dm_file, dm_minor, dm_rank;
    bool dm_check = false, dm_dual = false, dm_circuits = false, dm_enumerate = false;
    bool dm_iso = false, dm_cumulative = false;
    int dm_n = -1;
    sc_dm->add_option("file", dm_file);
    sc_dm->add_flag("--check", dm_check, "even exchange axiom");
    sc_dm->add_flag("--dual", dm_dual, "print the dual");
    sc_dm->add_option("--minor", dm_minor, "c:<set> contraction, d:<set> deletion");
    sc_dm->add_option("--rank", dm_rank, "rank of an admissible subset of J");
    sc_dm->add_flag("--circuits", dm_circuits, "list circuits and cocircuits");
    sc_dm->add_flag("--enumerate", dm_enumerate, "enumerate matroids on [n]");
    sc_dm->add_flag("--iso", dm_iso, "up to permutations and twists");
    sc_dm->add_flag("--cumulative", dm_cumulative, "include matroids with inert elements");
    sc_dm->add_option("-n", dm_n, "ground-set size for --enumerate");
    sc_dm->callback([&] {
        report["command"] = "dm";
        if (dm_enumerate) {
            if (dm_n < 0) throw std::invalid_argument("dm --enumerate needs -n");
            auto list = enumerate_even_delta_matroids(dm_n, dm_iso, dm_cumulative);
            report["count"] = list.size();
            if (!as_json) out << list.size() << "\n";
            return;
        }
        if (dm_file.empty()) throw std::invalid_argument("dm: missing input file");
        auto in = detail::open_or_throw(dm_file);
        io::DeltaMatroidFile file = io::read_delta_matroid(in);
        if (file.n > kMaxGroundSize) throw ScaleError(dm_file + ": ground set too large");
        if (dm_check) {
            bool even = is_even_delta_matroid(file.n, file.bases);
            report["even_delta_matroid"] = even;
            report["delta_matroid"] = is_delta_matroid(file.n, file.bases);
            predicate(even);
            if (!as_json) out << (even ? "true" : "false") << "\n";
            return;
        }
        EvenDeltaMatroid m(file.n, file.bases);
        if (dm_dual) {
            EvenDeltaMatroid d = m.dual();
            std::ostringstream text;
            io::write_delta_matroid(text, d.n(), d.bases());
            report["dual"] = text.str();
            if (!as_json) out << text.str();
            return;
        }
        if (!dm_minor.empty()) {
            if (dm_minor.size() < 2 || dm_minor[1] != ':' ||
                (dm_minor[0] != 'c' && dm_minor[0] != 'd'))
                throw std::invalid_argument("--minor wants c:<set> or d:<set>");
            SubsetMask s = io::parse_subset_literal(dm_minor.substr(2), file.n, false, 0);
            EvenDeltaMatroid result =
                dm_minor[0] == 'c' ? m.contraction(s) : m.deletion(s);
            std::ostringstream text;
            io::write_delta_matroid(text, result.n(), result.bases());
            report["minor"] = text.str();
            if (!as_json) out << text.str();
            return;
        }
        if (!dm_rank.empty()) {
            SubsetMask s = io::parse_subset_literal(dm_rank, file.n, true, 0);
            if (!is_admissible_mask(s, file.n))
                throw std::invalid_argument("--rank wants an admissible subset");
            int r = m.rank(s);
            report["rank"] = r;
            if (!as_json) out << r << "\n";
            return;
        }
        if (dm_circuits) {
            json jc = json::array(), jk = json::array();
            for (SubsetMask c : m.circuits()) {
                jc.push_back(io::subset_literal(c, m.n(), true));
                if (!as_json) out << "circuit " << io::subset_literal(c, m.n(), true) << "\n";
            }
            for (SubsetMask k : m.cocircuits()) {
                jk.push_back(io::subset_literal(k, m.n(), true));
                if (!as_json) out << "cocircuit " << io::subset_literal(k, m.n(), true) << "\n";
            }
            report["circuits"] = jc;
            report["cocircuits"] = jk;
            return;
        }
        throw std::invalid_argument("dm: choose one of --check/--dual/--minor/--rank/--circuits");
    });

    // ----- realize -----------------------------------------------------------
    auto* sc_realize = app.add_subcommand("realize", "valuations of a rowspace");
    std::string rz_file;
    bool rz_wick = false, rz_plucker = false;
    sc_realize->add_option("file", rz_file)->required();
    auto* rz_wick_flag = sc_realize->add_flag("--wick", rz_wick, "Wick valuation (n x 2n)");
    sc_realize->add_flag("--plucker", rz_plucker, "Pluecker valuation")->excludes(rz_wick_flag);
    sc_realize->callback([&] {
        auto in = detail::open_or_throw(rz_file);
        io::MatrixFile file = io::read_matrix(in);
        report["command"] = "realize";
        std::ostringstream text;
        if (rz_plucker) {
            TropicalPluckerVector p = plucker_valuation_from_rowspace(file.entries);
            io::write_wick_vector(text, p.ground_size(), p.signed_ground(), p.entries());
        } else {
            if (file.cols != 2 * file.rows || file.rows > kMaxGroundSize)
                throw std::invalid_argument("realize --wick wants an n x 2n matrix, n <= 6");
            TropicalWickVector p = wick_valuation_from_rowspace(file.entries);
            io::write_wick_vector(text, p.n(), false, p.entries());
        }
        report["vector"] = text.str();
        if (!as_json) out << text.str();
    });

    // ----- isotropical ---------------------------------------------------------
    auto* sc_isotropical = app.add_subcommand("isotropical", "isotropicality of L_p");
    std::string iso_file;
    sc_isotropical->add_option("file", iso_file)->required();
    sc_isotropical->callback([&] {
        TropicalPluckerVector p = detail::load_plucker(iso_file);
        bool result = is_isotropical(p);
        report["command"] = "isotropical";
        predicate(result);
        if (!as_json) out << (result ? "true" : "false") << "\n";
    });

    // ----- hull-test --------------------------------------------------------------
    auto* sc_hull = app.add_subcommand("hull-test", "tropical convex hull membership");
    std::string ht_x, ht_gens;
    sc_hull->add_option("vector-file", ht_x)->required();
    sc_hull->add_option("generators-file", ht_gens)->required();
    sc_hull->callback([&] {
        auto gin = detail::open_or_throw(ht_gens);
        std::vector<SignedVector> raw;
        {
            std::string line;
            int line_no = 0;
            int n = -1;
            while (std::getline(gin, line)) {
                ++line_no;
                if (line.find_first_not_of(" \t") == std::string::npos) continue;
                if (n < 0) {
                    std::istringstream probe(line);
                    std::string tok;
                    int count = 0;
                    while (probe >> tok) ++count;
                    if (count == 0 || count % 2 != 0)
                        throw ParseError(line_no, "expected 2n coordinates");
                    n = count / 2;
                    if (n > kMaxGroundSize) throw ScaleError("vectors exceed the scale guard");
                }
                raw.push_back(io::parse_signed_vector(line, n, line_no));
            }
        }
        if (raw.empty()) throw std::invalid_argument(ht_gens + ": no generators");
        SignedVector x = detail::load_one_vector(ht_x, raw.front().n());
        std::vector<TropicalVec> gens;
        gens.reserve(raw.size());
        for (const SignedVector& g : raw) gens.push_back(g.coords());
        HullResult hull = in_tropical_hull(x.coords(), gens);
        report["command"] = "hull-test";
        predicate(hull.member);
        if (hull.member) {
            std::string lambdas;
            for (std::size_t i = 0; i < hull.lambdas.size(); ++i) {
                if (i) lambdas += ' ';
                lambdas += hull.lambdas[i].str();
            }
            report["lambdas"] = lambdas;
            if (!as_json) out << "true\nlambda = " << lambdas << "\n";
        } else if (!as_json) {
            out << "false\n";
        }
    });

    // ----- sample ---------------------------------------------------------------
    auto* sc_sample = app.add_subcommand("sample", "sample the tropical linear space L_p");
    std::string sm_file;
    std::uint64_t sm_seed = 0;
    int sm_count = 10;
    sc_sample->add_option("file", sm_file)->required();
    sc_sample->add_option("--seed", sm_seed, "sampling seed");
    sc_sample->add_option("--count", sm_count, "number of samples");
    sc_sample->callback([&] {
        TropicalPluckerVector p = detail::load_plucker(sm_file);
        report["command"] = "sample";
        json items = json::array();
        for (const TropicalVec& v : sample_linear_space(p, sm_seed, sm_count)) {
            std::string line;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) line += ' ';
                line += v[i].str();
            }
            items.push_back(line);
            if (!as_json) out << line << "\n";
        }
        report["vectors"] = items;
    });

    // ----- drive ------------------------------------------------------------------
    std::vector<const char*> argv;
    argv.push_back("wick");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ScaleError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
    if (as_json) out << report.dump(2) << "\n";
    return exit_code;
}

}  // namespace cli
}  // namespace tropwick
