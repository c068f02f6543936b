// Command-line surface: enumeration, export, homology, and the
// verification suites.  JSON on stdout, human summaries on stderr.
// Exit codes: 0 ok, 1 failed verification, 2 usage error.

#include <CLI11.hpp>
#include <iostream>
#include <numeric>
#include <random>

#include "permuto/json_io.hpp"
#include "permuto/verify.hpp"

using namespace permuto;

namespace {

int run_poset_enum(int n, int dim, bool has_dim, const std::string& format) {
    if (format == "dot") {
        std::cout << hasse_dot(n);
        return 0;
    }
    json cells = json::array();
    if (n >= 7) {
        // stream without materializing the sorted vector
        for_each_cell(n, [&](const OrderedPartition& a) {
            if (!has_dim || a.degree() == dim) cells.push_back(to_json(a));
        });
    } else {
        for (const auto& a :
             enumerate_cells(n, has_dim ? std::optional<int>(dim) : std::nullopt))
            cells.push_back(to_json(a));
    }
    std::cout << json{{"schema", "permuto-cells/1"}, {"n", n}, {"cells", cells}}.dump() << '\n';
    std::cerr << cells.size() << " cells\n";
    return 0;
}

int run_preoperad_verify(int max_n, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    json report;
    report["schema"] = "permuto-preoperad/1";
    bool ok = true;
    std::string detail = "ok";
    try {
        for (int l = 1; l <= max_n; ++l) {
            auto cells = enumerate_cells(l);
            for (const auto& a : cells) {
                for (int i = 0; i <= l - 1 && l >= 2; ++i) {
                    auto lhs = degeneracy_pullback(i, a);
                    auto rhs = pullback(BasedInjection::degeneracy(l - 1, i), a);
                    if (!(lhs == rhs)) throw std::runtime_error("degeneracy mismatch");
                }
            }
            // insertion sections
            for (const auto& c : EpsilonCase::all_cases(l))
                for (const auto& b : cells)
                    if (!(degeneracy_pullback(c.i, insert(c, b)) == b))
                        throw std::runtime_error("insertion section fails");
            // fuzzed functoriality
            for (int iter = 0; iter < 200; ++iter) {
                int k = 1 + static_cast<int>(rng() % l);
                int j = 1 + static_cast<int>(rng() % k);
                std::vector<int> pool(l);
                std::iota(pool.begin(), pool.end(), 1);
                std::shuffle(pool.begin(), pool.end(), rng);
                pool.resize(k);
                BasedInjection phi(k, l, pool);
                std::vector<int> pool2(k);
                std::iota(pool2.begin(), pool2.end(), 1);
                std::shuffle(pool2.begin(), pool2.end(), rng);
                pool2.resize(j);
                BasedInjection psi(j, k, pool2);
                const auto& a = cells[rng() % cells.size()];
                if (!(pullback(psi, pullback(phi, a)) == pullback(compose(phi, psi), a)))
                    throw std::runtime_error("functoriality fails");
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report["passed"] = ok;
    report["detail"] = detail;
    report["max_n"] = max_n;
    std::cout << report.dump() << '\n';
    std::cerr << (ok ? "preoperad checks passed\n" : "preoperad checks FAILED\n");
    return ok ? 0 : 1;
}

FreeProductWord parse_word(const std::string& text, int level) {
    // "1:2,2:-1" means x1^2 x2^{-1}
    Phi0Instance inst(0);
    auto w = inst.identity(level);
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        int comp = std::stoi(item.substr(0, colon));
        long long power = colon == std::string::npos ? 1 : std::stoll(item.substr(colon + 1));
        w = inst.multiply(w, inst.generator(level, comp, power));
    }
    return w;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combinatorial double-loop-suspension toolkit"};
    app.require_subcommand(1);
    unsigned long long seed = 42;
    app.add_option("--seed", seed, "Seed for all randomized checks");

    // ---- poset ----
    auto* poset = app.add_subcommand("poset", "Ordered-partition poset operations");
    poset->require_subcommand(1);
    auto* penum = poset->add_subcommand("enum", "Enumerate the cells of L(n)");
    int pn = 3, pdim = 0;
    std::string pformat = "json";
    penum->add_option("-n", pn, "Ambient size")->required();
    auto* dim_opt = penum->add_option("--dim", pdim, "Restrict to one dimension");
    penum->add_option("--format", pformat, "json or dot")
        ->check(CLI::IsMember({"json", "dot"}));
    auto* phasse = poset->add_subcommand("hasse", "Hasse diagram of L(n)");
    int hn = 3;
    bool hdot = false;
    phasse->add_option("-n", hn, "Ambient size")->required();
    phasse->add_flag("--dot", hdot, "Emit DOT");

    // ---- preoperad ----
    auto* preop = app.add_subcommand("preoperad", "Preoperad structure checks");
    auto* pverify = preop->add_subcommand("verify", "Verify the structure maps");
    int pmax = 4;
    pverify->add_option("--max-n", pmax, "Largest level");

    // ---- coend ----
    auto* coend = app.add_subcommand("coend", "Combinatorial coend of a based set");
    coend->require_subcommand(1);
    auto* cenum = coend->add_subcommand("enum", "Enumerate coend classes");
    int cs = 1, ck = 3;
    cenum->add_option("--set-size", cs, "Non-basepoint element count")->required();
    cenum->add_option("--max-k", ck, "Largest cell size");
    auto* cexact = coend->add_subcommand("exact", "Verify the skeleton exact sequence");
    int es = 1, ek = 2;
    cexact->add_option("--set-size", es, "Non-basepoint element count")->required();
    cexact->add_option("-k", ek, "Skeleton index")->required();

    // ---- chains ----
    auto* chains = app.add_subcommand("chains", "Cellular chain complexes and homology");
    chains->require_subcommand(1);
    auto* chom = chains->add_subcommand("homology", "Integral homology");
    std::string space = "F";
    int chn = 3, chs = 1;
    chom->add_option("--space", space, "F or D")->check(CLI::IsMember({"F", "D"}));
    chom->add_option("-n", chn, "n for F, k for D")->required();
    chom->add_option("--set-size", chs, "Set size for D");
    auto* cshuffle = chains->add_subcommand("shuffle-check", "Top-cell boundary vs shuffles");
    int shk = 3;
    cshuffle->add_option("-k", shk, "Cell count")->required();
    auto* cladder = chains->add_subcommand("ladder", "Skeletal connecting composites");
    std::string lspace = "F";
    int ln = 4, ls = 1;
    cladder->add_option("--space", lspace, "F or D")->check(CLI::IsMember({"F", "D"}));
    cladder->add_option("-n", ln, "n for F, k for D")->required();
    cladder->add_option("--set-size", ls, "Set size for D");

    // ---- tensor ----
    auto* tensor = app.add_subcommand("tensor", "Tensor coalgebra operations");
    tensor->require_subcommand(1);
    auto* tshuffle = tensor->add_subcommand("shuffle", "Shuffle map of a word");
    std::string word_text = "1,2";
    std::string comp_text;
    tshuffle->add_option("--word", word_text, "Comma-separated letters")->required();
    tshuffle->add_option("--component", comp_text, "i,j component");
    auto* tlie = tensor->add_subcommand("lie-rank", "Rank of the left-normed bracket span");
    int lien = 3;
    tlie->add_option("-n", lien, "Number of generators")->required();
    auto* tcop = tensor->add_subcommand("coproduct-check", "Coproduct route equals shuffle");
    int maxlen = 5;
    tcop->add_option("--max-len", maxlen, "Largest word length");

    // ---- bidelta ----
    auto* bidelta = app.add_subcommand("bidelta", "Bi-delta groups and James-Hopf operators");
    bidelta->require_subcommand(1);
    auto* bjh = bidelta->add_subcommand("verify-jh", "Run the identity suite");
    int blevel = 6;
    bjh->add_option("--max-level", blevel, "Largest level");
    auto* bmagnus = bidelta->add_subcommand("magnus", "Magnus expansion of a word");
    std::string bword = "1:1";
    int bclass = 2, blevel2 = 1;
    bmagnus->add_option("--word", bword, "component:power list, e.g. 1:1,2:1,1:-1,2:-1")
        ->required();
    bmagnus->add_option("--class", bclass, "Truncation class")->required();
    bmagnus->add_option("--level", blevel2, "Ambient level");
    auto* bext = bidelta->add_subcommand("extension", "Normal bi-delta extension");
    std::vector<std::string> bgens;
    std::string quotient = "abelian";
    int bmax = 4;
    bext->add_option("--gens", bgens, "Generators as level:word, e.g. 1:1:1,2:1,1:-1,2:-1")
        ->required();
    bext->add_option("--quotient", quotient, "abelian or nilpotent:C");
    bext->add_option("--max-level", bmax, "Levels to compute");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "Verification suites");
    auto* vall = verify->add_subcommand("all", "Run the full acceptance suite");

    // --seed may follow any subcommand
    std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* cmd) {
        cmd->fallthrough();
        for (auto* sub : cmd->get_subcommands({})) allow_fallthrough(sub);
    };
    for (auto* sub : app.get_subcommands({})) allow_fallthrough(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2; --help exits 0
    }

    try {
        if (*penum) return run_poset_enum(pn, pdim, dim_opt->count() > 0, pformat);
        if (*phasse) {
            if (hdot) {
                std::cout << hasse_dot(hn);
            } else {
                json edges = json::array();
                for (const auto& [a, b] : cover_relations(hn))
                    edges.push_back(json::array({to_json(a), to_json(b)}));
                std::cout << json{{"schema", "permuto-hasse/1"}, {"n", hn}, {"covers", edges}}
                                 .dump()
                          << '\n';
            }
            return 0;
        }
        if (*pverify) return run_preoperad_verify(pmax, seed);
        if (*cenum) {
            auto groups = enumerate_coend(BasedSet(cs), ck);
            for (const auto& group : groups)
                for (const auto& cls : group) std::cout << to_json(cls).dump() << '\n';
            std::cerr << "enumerated filtrations 0.." << ck << "\n";
            return 0;
        }
        if (*cexact) {
            auto rep = verify_exactness(BasedSet(es), ek);
            std::cout << to_json(rep).dump() << '\n';
            std::cerr << (rep.all() ? "exactness verified\n" : "exactness FAILED\n");
            return rep.all() ? 0 : 1;
        }
        if (*chom) {
            auto c = space == "F" ? build_F_complex(chn) : build_D_complex(chn, BasedSet(chs));
            std::cout << to_json(homology(c)).dump() << '\n';
            return 0;
        }
        if (*cshuffle) {
            auto rep = shuffle_boundary_check(shk);
            std::cout << to_json(rep).dump() << '\n';
            std::cerr << (rep.all_mod2() && rep.all_signed() ? "shuffle check passed\n"
                                                             : "shuffle check FAILED\n");
            return rep.all_mod2() && rep.all_signed() ? 0 : 1;
        }
        if (*cladder) {
            auto c = lspace == "F" ? build_F_complex(ln) : build_D_complex(ln, BasedSet(ls));
            auto rep = ladder_composites(c);
            std::cout << to_json(rep).dump() << '\n';
            return rep.all_zero() ? 0 : 1;
        }
        if (*tshuffle) {
            Word w;
            std::stringstream ss(word_text);
            std::string item;
            while (std::getline(ss, item, ',')) w.push_back(std::stoi(item));
            std::optional<std::pair<int, int>> comp;
            if (!comp_text.empty()) {
                auto comma = comp_text.find(',');
                comp = std::make_pair(std::stoi(comp_text.substr(0, comma)),
                                      std::stoi(comp_text.substr(comma + 1)));
            }
            std::cout << to_json(shuffle_map(w, comp)).dump() << '\n';
            return 0;
        }
        if (*tlie) {
            auto r = lie_rank(lien);
            std::cout << to_json(r).dump() << '\n';
            std::cerr << "rank " << r.rank << "\n";
            return 0;
        }
        if (*tcop) {
            for (int k = 2; k <= maxlen; ++k) {
                Word w(k);
                std::iota(w.begin(), w.end(), 1);
                do {
                    if (!(reduced_coproduct_quotient(w) == shuffle_map(w))) {
                        std::cout << json{{"passed", false}}.dump() << '\n';
                        return 1;
                    }
                } while (std::next_permutation(w.begin(), w.end()));
            }
            std::cout << json{{"passed", true}, {"max_len", maxlen}}.dump() << '\n';
            return 0;
        }
        if (*bjh) {
            AbelianInstance a(0);
            auto rep = verify_jh_identities(a, blevel, seed, 500);
            std::cout << to_json(rep).dump() << '\n';
            std::cerr << rep.summary();
            return rep.all_passed() ? 0 : 1;
        }
        if (*bmagnus) {
            auto w = parse_word(bword, blevel2);
            Phi0Instance inst(0);
            std::cout << to_json(inst.magnus_eval(w, bclass)).dump() << '\n';
            return 0;
        }
        if (*bext) {
            // each generator: "LEVEL:word" with word in component:power form
            std::vector<std::pair<int, FreeProductWord>> gens;
            for (const auto& g : bgens) {
                auto colon = g.find(':');
                int level = std::stoi(g.substr(0, colon));
                gens.emplace_back(level, parse_word(g.substr(colon + 1), level));
            }
            json out;
            out["schema"] = "permuto-extension/1";
            if (quotient == "abelian") {
                std::vector<std::pair<int, AbelianInstance::Vec>> agens;
                for (const auto& [level, w] : gens) {
                    AbelianInstance::Vec v(static_cast<size_t>(level) + 1, 0);
                    for (const auto& [comp, exp] : w.letters) v[comp - 1] += exp;
                    agens.emplace_back(level, std::move(v));
                }
                auto ext = normal_extension_abelian(agens, bmax);
                json levels = json::array();
                for (int lv = 0; lv <= bmax; ++lv) {
                    json basis = json::array();
                    const auto& lat = ext.level_lattice[lv];
                    for (int c = 0; c < lat.cols; ++c) {
                        json v = json::array();
                        for (int r = 0; r <= lv; ++r) v.push_back(lat.at(r, c).str());
                        basis.push_back(v);
                    }
                    levels.push_back(json{{"level", lv}, {"lattice_basis", basis}});
                }
                out["quotient"] = "abelian";
                out["levels"] = levels;
            } else if (quotient.rfind("nilpotent:", 0) == 0) {
                int c = std::stoi(quotient.substr(10));
                auto ext = normal_extension_nilpotent(gens, bmax, c);
                json levels = json::array();
                for (int lv = 0; lv <= bmax; ++lv) {
                    json gen_list = json::array();
                    for (const auto& g : ext.generators()[lv]) gen_list.push_back(to_json(g));
                    levels.push_back(json{{"level", lv}, {"generators", gen_list}});
                }
                out["quotient"] = quotient;
                out["levels"] = levels;
            } else {
                std::cerr << "unknown quotient: " << quotient << "\n";
                return 2;
            }
            std::cout << out.dump() << '\n';
            return 0;
        }
        if (*vall) {
            auto rep = run_full_verification(seed);
            json payload = rep.payload();
            payload["seed"] = seed;
            std::cout << payload.dump() << '\n';
            std::cerr << rep.summary();
            return rep.all_passed() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "no subcommand selected\n";
    return 2;
}
