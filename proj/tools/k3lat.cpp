// k3lat: exact computations with the integral lattices attached to K3
// surfaces. Subcommands read JSON files or constructor strings, write a JSON
// report to stdout and a short human-readable summary to stderr.

#include "k3lat.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace {

using namespace k3lat;

bool g_json_only = false;

void summary(const std::string& line) {
    if (!g_json_only) std::cerr << line << "\n";
}

void emit(json j) {
    j["schema"] = "k3lat/1";
    std::cout << j.dump(2) << "\n";
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

Vec parse_vec(const std::string& text) {
    Vec v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        v.push_back(Int(tok));
    }
    return v;
}

QVec parse_qvec(const std::string& text) {
    QVec v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const auto slash = tok.find('/');
        if (slash == std::string::npos) v.push_back(Rat(Int(tok)));
        else v.push_back(Rat(Int(tok.substr(0, slash)), Int(tok.substr(slash + 1))));
    }
    return v;
}

struct LatticeInput {
    std::string file;
    std::string construct;

    IntegerLattice load() const {
        if (!construct.empty()) return parse_lattice(construct);
        if (!file.empty()) return decode_lattice(read_json_file(file));
        throw std::invalid_argument("no lattice given: use --lattice FILE or --construct STR");
    }

    void attach(CLI::App* cmd, const std::string& what = "lattice") {
        cmd->add_option("--lattice", file, "JSON file with the " + what);
        cmd->add_option("--construct", construct,
                        "constructor string, e.g. \"U+U+U+E8(-1)+E8(-1)\" or \"<2>\"");
    }
};

IMat load_matrix(const std::string& path) { return decode_imat(read_json_file(path).at("matrix")); }

std::string sig_str(const Signature& s) {
    return "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) +
           (s.null ? "," + std::to_string(s.null) : "") + ")";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact lattice computations for K3 surfaces"};
    app.require_subcommand(1);
    app.add_flag("--json-only", g_json_only, "suppress the human-readable summary on stderr");
    app.set_help_all_flag("--help-all", "print help for every subcommand");

    int exit_code = 0;

    // ---- lattice ----------------------------------------------------------
    auto* lattice_cmd = app.add_subcommand("lattice", "construct and interrogate lattices");
    lattice_cmd->require_subcommand(1);
    {
        auto input = std::make_shared<LatticeInput>();
        auto* info = lattice_cmd->add_subcommand("info", "rank, signature, parity, determinant");
        input->attach(info);
        info->callback([input] {
            const IntegerLattice lat = input->load();
            const Signature s = signature(lat);
            const Int det = determinant(lat);
            emit(json{{"rank", lat.rank()},
                      {"gram", encode(lat.gram())},
                      {"signature", encode(s)},
                      {"even", lat.is_even()},
                      {"determinant", encode(det)},
                      {"unimodular", abs(det) == 1},
                      {"nondegenerate", lat.is_nondegenerate()}});
            summary("rank " + std::to_string(lat.rank()) + ", signature " + sig_str(s) +
                    (lat.is_even() ? ", even" : ", odd") + ", det " + det.str());
        });
    }
    {
        auto input = std::make_shared<LatticeInput>();
        auto* disc = lattice_cmd->add_subcommand("disc", "discriminant group L*/L");
        input->attach(disc);
        disc->callback([input] {
            const DiscriminantGroup d = discriminant_group(input->load());
            emit(encode(d));
            std::string line = "discriminant group:";
            if (d.trivial()) line += " trivial";
            for (const Int& x : d.divisors()) line += " Z/" + x.str();
            summary(line);
        });
    }
    {
        auto input = std::make_shared<LatticeInput>();
        auto target = std::make_shared<std::string>("-2");
        auto bound = std::make_shared<long>(10);
        auto* en = lattice_cmd->add_subcommand("enum", "vectors of given norm in a coordinate box");
        input->attach(en);
        en->add_option("--target", *target, "norm to search for (default -2)");
        en->add_option("--bound", *bound, "coordinate box bound (default 10)");
        en->callback([input, target, bound] {
            const IntegerLattice lat = input->load();
            const auto found = enumerate_vectors_of_norm(lat, Int(*target), *bound);
            json arr = json::array();
            for (const Vec& v : found) arr.push_back(encode(v));
            emit(json{{"target", encode(Int(*target))}, {"bound", *bound}, {"vectors", arr}});
            summary(std::to_string(found.size()) + " vector(s) of norm " + *target +
                    " within box " + std::to_string(*bound));
        });
    }

    // ---- isometry ---------------------------------------------------------
    auto* iso_cmd = app.add_subcommand("isometry", "verify and analyze lattice isometries");
    iso_cmd->require_subcommand(1);
    auto add_isometry_sub = [&](const char* name, const char* desc, auto handler) {
        auto input = std::make_shared<LatticeInput>();
        auto mfile = std::make_shared<std::string>();
        auto* cmd = iso_cmd->add_subcommand(name, desc);
        input->attach(cmd);
        cmd->add_option("--isometry", *mfile, "JSON file {\"matrix\": [[..],..]}")->required();
        cmd->callback([input, mfile, handler] {
            const IntegerLattice lat = input->load();
            handler(verify_isometry(lat, load_matrix(*mfile)));
        });
        return cmd;
    };
    add_isometry_sub("check", "verify the Gram relation M^T G M = G", [](const Isometry& a) {
        emit(json{{"valid", true},
                  {"determinant", encode(determinant(a))},
                  {"matrix", encode(a.matrix)}});
        summary("valid isometry, det " + determinant(a).str());
    });
    add_isometry_sub("spinor", "spinor norm (reflections in negative-norm vectors are trivial)",
                     [](const Isometry& a) {
                         const int s = spinor_norm(a);
                         emit(json{{"spinor", s}});
                         summary(std::string("spinor norm ") + (s > 0 ? "+1" : "-1"));
                     });
    add_isometry_sub("factor", "Cartan-Dieudonne reflection factorization", [](const Isometry& a) {
        const ReflectionFactorization f = cartan_dieudonne_factor(a);
        emit(encode(f));
        summary(std::to_string(f.vectors.size()) + " reflection(s)");
    });
    add_isometry_sub("fixed", "saturated fixed sublattice", [](const Isometry& a) {
        const auto basis = fixed_sublattice(a);
        json arr = json::array();
        for (const Vec& v : basis) arr.push_back(encode(v));
        emit(json{{"rank", basis.size()}, {"basis", arr}});
        summary("fixed sublattice of rank " + std::to_string(basis.size()));
    });
    {
        auto input = std::make_shared<LatticeInput>();
        auto mfile = std::make_shared<std::string>();
        auto pfile = std::make_shared<std::string>();
        auto* cmd = iso_cmd->add_subcommand("orientation",
                                            "orientation sign on a positive-definite plane");
        input->attach(cmd);
        cmd->add_option("--isometry", *mfile, "JSON file {\"matrix\": [[..],..]}")->required();
        cmd->add_option("--plane", *pfile, "JSON file: array of rational vectors")->required();
        cmd->callback([input, mfile, pfile] {
            const IntegerLattice lat = input->load();
            const Isometry a = verify_isometry(lat, load_matrix(*mfile));
            std::vector<QVec> plane;
            for (const auto& row : read_json_file(*pfile)) plane.push_back(decode_qvec(row));
            const int s = orientation_sign(a, plane);
            emit(json{{"orientation", s}});
            summary(std::string("orientation ") + (s > 0 ? "+1" : "-1"));
        });
    }

    // ---- kneser -----------------------------------------------------------
    auto* kneser_cmd = app.add_subcommand("kneser", "arithmetic hypotheses of the membership law");
    kneser_cmd->require_subcommand(1);
    {
        auto input = std::make_shared<LatticeInput>();
        auto bound = std::make_shared<long>(10);
        auto* cmd = kneser_cmd->add_subcommand("check", "Witt index, p-ranks, -2 witness");
        input->attach(cmd);
        cmd->add_option("--enum-bound", *bound, "box bound for the -2 witness (default 10)");
        cmd->callback([input, bound] {
            const KneserReport r = check_kneser_hypotheses(input->load(), *bound);
            emit(encode(r));
            std::string line = "witt " + std::to_string(r.witt_index) + ", rk2 " +
                               std::to_string(r.rk2) + ", rk3 " + std::to_string(r.rk3) +
                               (r.hypotheses_met ? "; hypotheses met" : "; hypotheses NOT met");
            summary(line);
        });
    }

    // ---- weyl -------------------------------------------------------------
    auto* weyl_cmd = app.add_subcommand("weyl", "Weyl group membership and factorization");
    weyl_cmd->require_subcommand(1);
    auto add_weyl_sub = [&](const char* name, const char* desc) {
        auto input = std::make_shared<LatticeInput>();
        auto mfile = std::make_shared<std::string>();
        auto bound = std::make_shared<long>(10);
        auto budget = std::make_shared<unsigned long long>(10000);
        auto* cmd = weyl_cmd->add_subcommand(name, desc);
        input->attach(cmd);
        cmd->add_option("--isometry", *mfile, "JSON file {\"matrix\": [[..],..]}")->required();
        cmd->add_option("--enum-bound", *bound, "box bound for the reflection pool (default 10)");
        cmd->add_option("--factor-budget", *budget, "search budget (default 10000)");
        cmd->callback([input, mfile, bound, budget] {
            const IntegerLattice lat = input->load();
            const Isometry a = verify_isometry(lat, load_matrix(*mfile));
            const WeylMembership w = weyl_group_membership(a, *bound, *budget);
            emit(encode(w));
            std::string line = w.applicable
                                   ? std::string("member: ") + (w.is_member ? "yes" : "no")
                                   : std::string("criterion inapplicable on this lattice");
            if (w.factorization)
                line += "; factored into " + std::to_string(w.factorization->size()) +
                        " (-2)-reflection(s)";
            else if (w.is_member)
                line += "; factorization search exhausted its budget";
            summary(line);
        });
    };
    add_weyl_sub("member", "membership via spinor norm and discriminant action");
    add_weyl_sub("factor", "membership plus best-effort factorization report");

    // ---- k3 ---------------------------------------------------------------
    auto* k3_cmd = app.add_subcommand("k3", "Mukai lattice structure over an NS lattice");
    k3_cmd->require_subcommand(1);
    auto attach_ns = [](CLI::App* cmd, std::shared_ptr<LatticeInput> input) {
        cmd->add_option("--ns", input->file, "JSON file with the NS lattice");
        cmd->add_option("--ns-construct", input->construct, "NS constructor string, e.g. \"<2>\"");
    };
    {
        auto input = std::make_shared<LatticeInput>();
        auto* cmd = k3_cmd->add_subcommand("extend", "the extended (Mukai) lattice NS + U");
        attach_ns(cmd, input);
        cmd->callback([input] {
            const IntegerLattice ext = extended_ns(input->load());
            emit(encode(ext));
            summary("extended lattice of rank " + std::to_string(ext.rank()) + ", signature " +
                    sig_str(signature(ext)));
        });
    }
    {
        auto input = std::make_shared<LatticeInput>();
        auto lstr = std::make_shared<std::string>();
        auto cstr = std::make_shared<std::string>();
        auto ival = std::make_shared<long>(-1);
        auto* cmd = k3_cmd->add_subcommand("mukai", "Mukai vector of a line bundle or curve sheaf");
        attach_ns(cmd, input);
        cmd->add_option("--line-bundle", *lstr, "first Chern class, comma-separated");
        cmd->add_option("--curve", *cstr, "(-2)-curve class, comma-separated");
        cmd->add_option("--i", *ival, "twist degree for the curve sheaf (default -1)");
        cmd->callback([input, lstr, cstr, ival] {
            const IntegerLattice ns = input->load();
            MukaiVector v{Int(0), Vec(ns.rank()), Int(0)};
            if (!lstr->empty()) v = mukai_vector_of_line_bundle(ns, parse_vec(*lstr));
            else if (!cstr->empty()) v = mukai_vector_of_curve_sheaf(ns, parse_vec(*cstr), Int(*ival));
            else throw std::invalid_argument("give --line-bundle or --curve");
            emit(encode(v));
            summary("Mukai vector of square " + mukai_square(ns, v).str());
        });
    }
    {
        auto input = std::make_shared<LatticeInput>();
        auto vfile = std::make_shared<std::string>();
        auto* cmd = k3_cmd->add_subcommand("twist-action",
                                           "spherical twist action on the extended lattice");
        attach_ns(cmd, input);
        cmd->add_option("--mukai", *vfile, "JSON file {\"r\":..,\"l\":[..],\"s\":..}")->required();
        cmd->callback([input, vfile] {
            const IntegerLattice ns = input->load();
            const MukaiVector v = decode_mukai(read_json_file(*vfile));
            const Isometry s = spherical_twist_action(ns, v);
            emit(json{{"matrix", encode(s.matrix)}});
            summary("reflection in a spherical class on the rank-" +
                    std::to_string(s.lattice.rank()) + " extended lattice");
        });
    }
    {
        auto kfile = std::make_shared<std::string>();
        auto astr = std::make_shared<std::string>();
        auto steps = std::make_shared<unsigned long>(1000);
        auto* cmd = k3_cmd->add_subcommand("chamber", "walk a class into the Kahler chamber");
        cmd->add_option("--k3", *kfile, "JSON file {\"ns\":..,\"ample\":..,\"curves\":..}")->required();
        cmd->add_option("--alpha", *astr, "class to normalize, comma-separated")->required();
        cmd->add_option("--max-steps", *steps, "walk budget (default 1000)");
        cmd->callback([kfile, astr, steps] {
            const K3LatticeData data = decode_k3(read_json_file(*kfile));
            const ChamberWalk w = chamber_normalize(data, parse_vec(*astr), *steps);
            emit(encode(w));
            summary(w.exhausted ? "walk exhausted its budget"
                                : "reached the chamber in " + std::to_string(w.word.size()) +
                                      " reflection(s)");
        });
    }
    {
        auto input = std::make_shared<LatticeInput>();
        auto xstr = std::make_shared<std::string>();
        auto ystr = std::make_shared<std::string>();
        auto bound = std::make_shared<long>(10);
        auto* cmd = k3_cmd->add_subcommand("p0", "root-free positive-plane membership");
        attach_ns(cmd, input);
        cmd->add_option("--x", *xstr, "extended-lattice vector, rationals comma-separated")->required();
        cmd->add_option("--y", *ystr, "extended-lattice vector, rationals comma-separated")->required();
        cmd->add_option("--bound", *bound, "box bound for the root scan (default 10)");
        cmd->callback([input, xstr, ystr, bound] {
            const P0Verdict v = p0_membership(input->load(), parse_qvec(*xstr), parse_qvec(*ystr), *bound);
            emit(encode(v));
            if (!v.plane_positive) summary("plane is not positive definite");
            else summary(v.inside ? "inside (no orthogonal root within the box)"
                                  : "not inside: orthogonal (-2)-class found");
        });
    }

    // ---- bv ---------------------------------------------------------------
    auto* bv_cmd = app.add_subcommand("bv", "the canonical Chow subring R = Z + NS + Zc");
    bv_cmd->require_subcommand(1);
    {
        auto input = std::make_shared<LatticeInput>();
        auto ufile = std::make_shared<std::string>();
        auto vfile = std::make_shared<std::string>();
        auto* cmd = bv_cmd->add_subcommand("mul", "ring product");
        attach_ns(cmd, input);
        cmd->add_option("--u", *ufile, "JSON file {\"a\":..,\"l\":[..],\"m\":..}")->required();
        cmd->add_option("--v", *vfile, "JSON file {\"a\":..,\"l\":[..],\"m\":..}")->required();
        cmd->callback([input, ufile, vfile] {
            const IntegerLattice ns = input->load();
            const BVClass out = bv_mul(ns, decode_bv(read_json_file(*ufile)),
                                       decode_bv(read_json_file(*vfile)));
            emit(encode(out));
            summary("product computed");
        });
    }
    {
        auto input = std::make_shared<LatticeInput>();
        auto lstr = std::make_shared<std::string>();
        auto* cmd = bv_cmd->add_subcommand("vch", "Chow-valued Mukai vector of a line bundle");
        attach_ns(cmd, input);
        cmd->add_option("--l", *lstr, "first Chern class, comma-separated")->required();
        cmd->callback([input, lstr] {
            const IntegerLattice ns = input->load();
            emit(encode(vch_line_bundle(ns, parse_vec(*lstr))));
            summary("Chow-valued Mukai vector computed");
        });
    }
    {
        auto input = std::make_shared<LatticeInput>();
        auto mfile = std::make_shared<std::string>();
        auto ufile = std::make_shared<std::string>();
        auto* cmd = bv_cmd->add_subcommand("act", "transfer an extended-lattice isometry to R");
        attach_ns(cmd, input);
        cmd->add_option("--isometry", *mfile, "JSON file: isometry of the EXTENDED lattice")->required();
        cmd->add_option("--u", *ufile, "JSON file {\"a\":..,\"l\":[..],\"m\":..}")->required();
        cmd->callback([input, mfile, ufile] {
            const IntegerLattice ns = input->load();
            const Isometry g = verify_isometry(extended_ns(ns), load_matrix(*mfile));
            const BVClass out = induced_action_on_R(g).apply(decode_bv(read_json_file(*ufile)));
            json j = encode(out);
            j["rho_ge_2"] = ns.rank() >= 2;
            emit(j);
            if (ns.rank() < 2)
                summary("note: Picard rank 1 is outside the proved range of the transfer");
            summary("action applied");
        });
    }

    // ---- theorem5 ---------------------------------------------------------
    {
        auto input = std::make_shared<LatticeInput>();
        auto ffile = std::make_shared<std::string>();
        auto bound = std::make_shared<long>(10);
        auto budget = std::make_shared<unsigned long long>(10000);
        auto ample = std::make_shared<std::string>();
        auto* cmd = app.add_subcommand(
            "theorem5", "decide trivial Chow action for a symplectomorphism's NS matrix");
        attach_ns(cmd, input);
        cmd->add_option("--f", *ffile, "JSON file {\"matrix\": [[..],..]} acting on NS")->required();
        cmd->add_option("--enum-bound", *bound, "box bound for pools and witnesses (default 10)");
        cmd->add_option("--factor-budget", *budget, "factorization budget (default 10000)");
        cmd->add_option("--ample", *ample, "optional ample class, comma-separated");
        cmd->callback([input, ffile, bound, budget, ample, &exit_code] {
            Theorem5Options opts;
            opts.enum_bound = *bound;
            opts.factor_budget = *budget;
            if (!ample->empty()) opts.ample = parse_vec(*ample);
            const Theorem5Report rep = run_theorem5(input->load(), load_matrix(*ffile), opts);
            emit(encode(rep));
            std::string line = std::string("conclusion: ") + to_string(rep.conclusion);
            if (rep.factorization)
                line += " (word of " + std::to_string(rep.factorization->size()) +
                        " spherical classes)";
            summary(line);
            switch (rep.conclusion) {
                case Theorem5Conclusion::TRIVIAL_ON_CH2:
                    summary("the action on the Mukai lattice lies in the Weyl group, i.e. it is "
                            "a product of reflections in spherical classes; every such product "
                            "comes from spherical twists, which act trivially on the degree-2 "
                            "Chow group");
                    break;
                case Theorem5Conclusion::CRITERION_INAPPLICABLE:
                    summary("the membership hypotheses fail on this lattice, so this route "
                            "decides nothing either way");
                    break;
                case Theorem5Conclusion::NOT_SYMPLECTOMORPHISM_LIKE:
                    summary(rep.disc_trivial_on_ns
                                ? "the spinor norm is -1, which no symplectomorphism can induce"
                                : "the action on the discriminant group is nontrivial, but a "
                                  "symplectomorphism acts trivially there");
                    break;
                case Theorem5Conclusion::ANOMALY:
                    summary("spinor -1 with preserved orientation is impossible for genuine "
                            "inputs; check the input data");
                    break;
            }
            exit_code = exit_code_for(rep.conclusion);
        });
    }

    // let --json-only appear anywhere on the command line
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* cmd) {
        for (CLI::App* sub : cmd->get_subcommands({})) {
            sub->fallthrough();
            enable_fallthrough(sub);
        }
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        std::cerr << e.what() << "\n" << app.help() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
