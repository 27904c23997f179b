#include <CLI11.hpp>

#include <sepsys/sepsys.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>

using namespace sepsys;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kParse = 2;

SeparationKind kind_of(const std::string& k) {
    if (k == "s") return SeparationKind::Strong;
    if (k == "w") return SeparationKind::Weak;
    return SeparationKind::Chord;
}

TriangulationPolicy policy_of(const std::string& p) {
    return p == "rightmost" ? TriangulationPolicy::Rightmost : TriangulationPolicy::Leftmost;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("SEPSYS_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "ignoring malformed SEPSYS_SEED\n";
        }
    }
    return 1;
}

Collection load_collection(const std::string& path) { return parse_collection(read_text(path)); }
Cubillage load_cubillage(const std::string& path) { return parse_cubillage(read_text(path)); }

std::string membrane_line(const Collection& c) {
    std::string s;
    for (Subset x : canonical_order(c)) s += (s.empty() ? "" : " ") + x.str();
    return s;
}

Triple parse_colors(const std::string& text) {
    auto t = detail::tokens(text);
    if (t.size() != 3) throw ParseError(0, "expected three colors");
    return {detail::parse_int(t[0], 0), detail::parse_int(t[1], 0), detail::parse_int(t[2], 0)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Separated set-systems, tilings, combies and cubillages"};
    app.require_subcommand(1);
    std::function<int()> action;
    auto kinds = CLI::IsMember({"s", "w", "c"});
    auto policies = CLI::IsMember({"leftmost", "rightmost"});

    std::string file, kind = "c", out_path, policy = "leftmost", base, colors, membrane_file, membrane_out;
    int n = 0, trials = 100, color = 0, level = 1;
    std::uint64_t seed = default_seed();
    bool exhaustive = false;

    auto* sep = app.add_subcommand("sep", "Separation checks on a collection file");
    sep->require_subcommand(1);
    auto* sep_check = sep->add_subcommand("check", "Test pairwise separation");
    sep_check->add_option("--kind", kind)->required()->check(kinds);
    sep_check->add_option("FILE", file)->required();
    sep_check->callback([&] {
        action = [&] {
            Collection c = load_collection(file);
            if (auto v = find_violation(kind_of(kind), c)) {
                std::cout << "violation " << v->first.str() << " " << v->second.str() << "\n";
                return kFail;
            }
            std::cout << "separated\n";
            return kOk;
        };
    });
    auto* sep_complete = sep->add_subcommand("complete", "Greedy completion to a maximal collection");
    sep_complete->add_option("--kind", kind)->required()->check(kinds);
    sep_complete->add_option("--seed", seed);
    sep_complete->add_option("FILE", file)->required();
    sep_complete->callback([&] {
        action = [&] {
            std::cout << serialize_collection(greedy_complete(kind_of(kind), load_collection(file), seed));
            return kOk;
        };
    });

    auto* rank = app.add_subcommand("rank", "Rank formula");
    rank->add_option("--kind", kind)->required()->check(kinds);
    rank->add_option("-n", n)->required()->check(CLI::Range(0, 64));
    rank->callback([&] {
        action = [&] {
            std::cout << rank_formula(kind_of(kind), n) << "\n";
            return kOk;
        };
    });

    auto* purity = app.add_subcommand("purity", "Check that all maximal collections share one size");
    purity->add_option("--kind", kind)->required()->check(kinds);
    purity->add_option("-n", n)->required();
    auto* ex = purity->add_flag("--exhaustive", exhaustive);
    purity->add_option("--trials", trials)->excludes(ex)->check(CLI::PositiveNumber);
    purity->add_option("--seed", seed)->excludes(ex);
    purity->callback([&] {
        action = [&] {
            auto r = exhaustive ? verify_purity_exhaustive(kind_of(kind), n) : verify_purity_sampled(kind_of(kind), n, trials, seed);
            std::cout << "kind " << kind << " n " << n << " mode " << (exhaustive ? "exhaustive" : "sampled") << " collections "
                      << r.collections << " min " << r.min_size << " max " << r.max_size << " rank " << r.expected_rank
                      << " pure " << (r.pure() ? "yes" : "no") << "\n";
            return r.pure() ? kOk : kFail;
        };
    });

    auto* tiling = app.add_subcommand("tiling", "Rhombus tilings from maximal s-collections");
    tiling->require_subcommand(1);
    auto* tbuild = tiling->add_subcommand("build", "Print the rhombi");
    tbuild->add_option("FILE", file)->required();
    tbuild->callback([&] {
        action = [&] {
            Tiling t = tiling_from_s_collection(load_collection(file));
            std::cout << "n " << t.n() << "\n";
            for (const auto& r : t.rhombi()) std::cout << "rhombus " << subset_literal(r.bottom) << " | " << r.i << " " << r.j << "\n";
            return kOk;
        };
    });
    auto* tflip = tiling->add_subcommand("flip", "List hexagons, or flip one and print the new spectrum");
    tflip->add_option("FILE", file)->required();
    auto* base_opt = tflip->add_option("--base", base, "bottom set X ('-' for empty)");
    tflip->add_option("--colors", colors, "\"i j k\"")->needs(base_opt);
    base_opt->needs(tflip->get_option("--colors"));
    tflip->callback([&] {
        action = [&] {
            Tiling t = tiling_from_s_collection(load_collection(file));
            auto hs = find_hexagons(t);
            if (base.empty()) {
                for (const auto& h : hs)
                    std::cout << "hexagon " << subset_literal(h.base) << " | " << h.i << " " << h.j << " " << h.k << " "
                              << (h.config == HexConfig::Y ? "Y" : "turned") << "\n";
                return kOk;
            }
            Subset x = parse_subset_literal(base, t.n());
            Triple c = parse_colors(colors);
            for (const auto& h : hs)
                if (h.base == x && h.i == c.i && h.j == c.j && h.k == c.k) {
                    std::cout << serialize_collection(strong_flip(t, h).spectrum());
                    return kOk;
                }
            std::cerr << "no hexagon at the given base and colors\n";
            return kFail;
        };
    });
    auto* tinv = tiling->add_subcommand("inversions", "Print the inversion triples");
    tinv->add_option("FILE", file)->required();
    tinv->callback([&] {
        action = [&] {
            for (const auto& tr : inversion_set(tiling_from_s_collection(load_collection(file))))
                std::cout << tr.i << " " << tr.j << " " << tr.k << "\n";
            return kOk;
        };
    });

    auto* combi = app.add_subcommand("combi", "Combies from maximal w-collections");
    combi->require_subcommand(1);
    auto* cbuild = combi->add_subcommand("build", "Print the tiles of the combi");
    cbuild->add_option("FILE", file)->required();
    auto* tri_opt = cbuild->add_option("--triangulate", policy, "print a fully triangulated quasi-combi instead")->check(policies);
    cbuild->callback([&] {
        action = [&] {
            QuasiCombi k = combi_from_w_collection(load_collection(file));
            if (*tri_opt) k = triangulate(k, policy_of(policy));
            for (const auto& t : k.tiles()) std::cout << t.str() << "\n";
            return kOk;
        };
    });

    auto* cub = app.add_subcommand("cubillage", "Cubillages of Z(n,3)");
    cub->require_subcommand(1);
    auto* qbuild = cub->add_subcommand("build", "Cubillage of a maximal c-collection");
    qbuild->add_option("FILE", file)->required();
    qbuild->callback([&] {
        action = [&] {
            std::cout << serialize_cubillage(cubillage_from_c_collection(load_collection(file)));
            return kOk;
        };
    });
    auto* qval = cub->add_subcommand("validate", "Validate a cubillage file");
    qval->add_option("FILE", file)->required();
    qval->callback([&] {
        action = [&] {
            Report rep = validate_cubillage(load_cubillage(file));
            if (!rep.ok()) {
                std::cout << "invalid\n";
                std::cerr << rep.str() << "\n";
                return kFail;
            }
            std::cout << "valid\n";
            return kOk;
        };
    });
    auto* qcon = cub->add_subcommand("contract", "Contract the pie of color 1 or n");
    qcon->add_option("FILE", file)->required();
    qcon->add_option("--color", color)->required();
    qcon->add_option("--membrane-out", membrane_out, "write the image of the pie as a collection file");
    qcon->callback([&] {
        action = [&] {
            Cubillage q = load_cubillage(file);
            if (!validate_cubillage(q).ok()) throw std::invalid_argument("input is not a valid cubillage");
            auto c = contract(q, color);
            std::cout << serialize_cubillage(c.reduced);
            if (!membrane_out.empty()) write_text(membrane_out, serialize_collection(c.membrane.spectrum()));
            return kOk;
        };
    });
    auto* qexp = cub->add_subcommand("expand", "Expand along an s-membrane");
    qexp->add_option("FILE", file)->required();
    qexp->add_option("--membrane", membrane_file, "collection file with the membrane's spectrum")->required();
    qexp->add_option("--color", color)->required();
    qexp->callback([&] {
        action = [&] {
            Cubillage q = load_cubillage(file);
            Tiling m = tiling_from_s_collection(load_collection(membrane_file));
            std::cout << serialize_cubillage(expand(q, m, color));
            return kOk;
        };
    });
    auto* qmem = cub->add_subcommand("membranes", "Enumerate s-membranes");
    qmem->add_option("FILE", file)->required();
    qmem->callback([&] {
        action = [&] {
            Cubillage q = load_cubillage(file);
            if (!validate_cubillage(q).ok()) throw std::invalid_argument("input is not a valid cubillage");
            auto ms = enumerate_membranes(q);
            std::cout << "membranes " << ms.size() << "\n";
            for (const auto& m : ms) std::cout << membrane_line(m.spectrum()) << "\n";
            return kOk;
        };
    });

    auto* wext = app.add_subcommand("wextend", "Extend a maximal w-collection to a maximal c-collection");
    wext->require_subcommand(1);
    auto* wrun = wext->add_subcommand("run", "Run the extension");
    wrun->add_option("FILE", file)->required();
    wrun->add_option("--lens-policy", policy)->check(policies);
    wrun->add_option("--emit-cubillage", out_path);
    wrun->callback([&] {
        action = [&] {
            auto r = extend_w_to_c(load_collection(file), policy_of(policy));
            std::cout << serialize_collection(r.spectrum);
            if (!out_path.empty()) write_text(out_path, serialize_cubillage(r.cubillage));
            for (const auto* s : {&r.front_stats, &r.rear_stats})
                std::cerr << (s == &r.front_stats ? "front" : "rear") << " phase: case1 " << s->case1 << " case2a " << s->case2a
                          << " case2b " << s->case2b << " cone fragments " << s->delta_fragments_2b << " filled cubes "
                          << s->filled_cubes << "\n";
            return kOk;
        };
    });

    auto* render = app.add_subcommand("render", "SVG drawings");
    render->require_subcommand(1);
    auto* rt = render->add_subcommand("tiling", "Tiling of a maximal s-collection");
    auto* rc = render->add_subcommand("combi", "Combi of a maximal w-collection");
    auto* rs = render->add_subcommand("section", "Section of the fragmentation of a cubillage file");
    for (auto* r : {rt, rc, rs}) {
        r->add_option("FILE", file)->required();
        r->add_option("--svg", out_path)->required();
    }
    rc->add_option("--triangulate", policy)->check(policies);
    rs->add_option("--level", level)->required();
    rt->callback([&] {
        action = [&] {
            write_text(out_path, render_tiling_svg(tiling_from_s_collection(load_collection(file))));
            return kOk;
        };
    });
    rc->callback([&] {
        action = [&] {
            QuasiCombi k = combi_from_w_collection(load_collection(file));
            if (*rc->get_option("--triangulate")) k = triangulate(k, policy_of(policy));
            write_text(out_path, render_combi_svg(k));
            return kOk;
        };
    });
    rs->callback([&] {
        action = [&] {
            Cubillage q = load_cubillage(file);
            if (!validate_cubillage(q).ok()) throw std::invalid_argument("input is not a valid cubillage");
            write_text(out_path, render_section_svg(Fragmentation(q), level));
            return kOk;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }
    try {
        return action ? action() : kFail;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kFail;
    }
}
