// Command-line front end: generate, analyze, factor, zeta, cohomology, catalog.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "substfactor/appcomplex.hpp"
#include "substfactor/catalog.hpp"
#include "substfactor/core.hpp"
#include "substfactor/factors.hpp"
#include "substfactor/language.hpp"
#include "substfactor/text_format.hpp"
#include "substfactor/toeplitz.hpp"
#include "substfactor/zeta.hpp"

using namespace substfactor;
using nlohmann::ordered_json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_negative = 2;
constexpr std::size_t default_max_cells = 4'000'000;

struct Report {
    std::string command;
    ordered_json inputs = ordered_json::object();
    ordered_json outputs = ordered_json::object();
    std::ostringstream text;
    int status = exit_ok;
};

struct SubstitutionArgs {
    std::string name;
    std::optional<int> k, l;
    std::optional<std::string> partition;
};

void add_substitution_args(CLI::App* cmd, SubstitutionArgs& args) {
    cmd->add_option("name", args.name, "Catalog name or substitution definition file")->required();
    cmd->add_option("--k", args.k, "First gtm/gpd parameter");
    cmd->add_option("--l", args.l, "Second gtm/gpd parameter");
    cmd->add_option("--partition", args.partition, "Symbol identification for fmax_ident, e.g. e=f=g");
}

Substitution load(const SubstitutionArgs& args, Report& report) {
    report.inputs["name"] = args.name;
    if (args.k) report.inputs["k"] = *args.k;
    if (args.l) report.inputs["l"] = *args.l;
    if (args.partition) report.inputs["partition"] = *args.partition;
    const auto& names = catalog_names();
    if (std::find(names.begin(), names.end(), args.name) != names.end())
        return catalog(args.name, CatalogParams{args.k, args.l, args.partition});
    if (std::filesystem::exists(args.name)) return parse_substitution(read_file(args.name));
    throw std::invalid_argument("unknown substitution '" + args.name + "' (see `catalog list`)");
}

std::size_t max_cells() {
    if (const char* env = std::getenv("SUBSTFACTOR_MAX_CELLS")) return std::stoull(env);
    return default_max_cells;
}

Shape parse_shape(const std::string& text) {
    std::string t = text;
    for (const std::string times : {"\xc3\x97", "X"}) {
        const auto pos = t.find(times);
        if (pos != std::string::npos) t.replace(pos, times.size(), "x");
    }
    const auto x = t.find('x');
    if (x == std::string::npos) return Shape{1, std::stoi(t)};
    return Shape{std::stoi(t.substr(0, x)), std::stoi(t.substr(x + 1))};
}

std::string shape_string(Shape s) { return std::to_string(s.rows) + "x" + std::to_string(s.cols); }

Seed parse_seed(const Substitution& sub, std::string text, int period) {
    std::replace(text.begin(), text.end(), '|', ' ');
    if (sub.dim() == 2 && text.find('/') == std::string::npos) throw std::invalid_argument("2D seed must look like 'a b / c d'");
    auto rows = split_block(text, sub.alphabet());
    if (sub.dim() == 1 && rows.size() == 1 && rows[0].size() == 1) rows = split_block(text + " ", sub.alphabet());
    return make_seed(sub, rows, period);
}

ordered_json pattern_json(const Alphabet& a, const Pattern& p) {
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < p.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < p.cols(); ++c) row.push_back(a.name(p.at(r, c)));
        rows.push_back(row);
    }
    return rows;
}

ordered_json substitution_json(const Substitution& s) {
    ordered_json images = ordered_json::object();
    for (Letter l = 0; l < s.size(); ++l) images[s.alphabet().name(l)] = format_block(s.alphabet(), s.image(l));
    return {{"alphabet", s.alphabet().names()}, {"images", images}};
}

// Fixed palette; two-letter alphabets use black and white.
const std::array<std::array<unsigned char, 3>, 8> palette = {{
    {31, 119, 180}, {255, 127, 14}, {44, 160, 44}, {214, 39, 40}, {148, 103, 189}, {140, 86, 75}, {227, 119, 194}, {127, 127, 127},
}};

std::array<unsigned char, 3> color(const Substitution& sub, Letter l) {
    if (sub.size() == 2) return l == 0 ? std::array<unsigned char, 3>{20, 20, 20} : std::array<unsigned char, 3>{240, 240, 240};
    return palette[l % palette.size()];
}

void render(const Substitution& sub, const Pattern& p, const std::string& path, int scale) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    const bool svg = path.size() >= 4 && path.substr(path.size() - 4) == ".svg";
    if (svg) {
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << p.cols() * scale << "\" height=\"" << p.rows() * scale << "\">\n";
        for (int r = 0; r < p.rows(); ++r)
            for (int c = 0; c < p.cols(); ++c) {
                const auto rgb = color(sub, p.at(r, c));
                out << "<rect x=\"" << c * scale << "\" y=\"" << r * scale << "\" width=\"" << scale << "\" height=\"" << scale << "\" fill=\"rgb("
                    << int(rgb[0]) << "," << int(rgb[1]) << "," << int(rgb[2]) << ")\"/>\n";
            }
        out << "</svg>\n";
        return;
    }
    out << "P6\n" << p.cols() * scale << ' ' << p.rows() * scale << "\n255\n";
    for (int r = 0; r < p.rows() * scale; ++r)
        for (int c = 0; c < p.cols() * scale; ++c) {
            const auto rgb = color(sub, p.at(r / scale, c / scale));
            out.write(reinterpret_cast<const char*>(rgb.data()), 3);
        }
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    SubstitutionArgs sub;
    int level = 0;
    std::optional<std::string> seed, letter, output;
    std::optional<std::string> render_path;
    bool render = false;
    int scale = 1;
};

void run_generate(const GenerateArgs& args, Report& report) {
    const Substitution sub = load(args.sub, report);
    if (args.level < 0) throw std::invalid_argument("level must be nonnegative");
    report.inputs["level"] = args.level;
    Pattern p;
    if (args.seed) {
        report.inputs["seed"] = *args.seed;
        p = parse_seed(sub, *args.seed, 1).letters;
    } else {
        const Letter l = args.letter ? sub.alphabet().index(*args.letter) : Letter{0};
        report.inputs["letter"] = sub.alphabet().name(l);
        p = Pattern::single(sub.dim(), l);
    }
    const std::size_t cap = max_cells();
    for (int i = 0; i < args.level; ++i) {
        p = apply(sub, p);
        if (p.size() > cap)
            throw std::runtime_error("patch exceeds SUBSTFACTOR_MAX_CELLS = " + std::to_string(cap) + " at level " + std::to_string(i + 1));
    }
    report.outputs["rows"] = p.rows();
    report.outputs["cols"] = p.cols();
    if (args.render) {
        const std::string path = args.render_path ? *args.render_path : args.sub.name + ".ppm";
        render(sub, p, path, std::max(1, args.scale));
        report.outputs["image"] = path;
        report.text << "wrote " << path << " (" << p.cols() * args.scale << "x" << p.rows() * args.scale << ")\n";
        if (!args.output) return;
    }
    const std::string block = format_block(sub.alphabet(), p);
    std::string body = block;
    if (p.dim() == 2) {
        body.clear();
        for (int r = 0; r < p.rows(); ++r) body += format_block(sub.alphabet(), p.sub(r, 0, 1, p.cols())) + "\n";
    } else {
        body += "\n";
    }
    report.outputs["pattern"] = pattern_json(sub.alphabet(), p);
    if (args.output) {
        std::ofstream(*args.output) << body;
        report.text << "wrote " << *args.output << "\n";
    } else if (!args.render) {
        report.text << body;
    }
}

// ----------------------------------------------------------------- analyze

struct AnalyzeArgs {
    SubstitutionArgs sub;
    std::string analysis;
    std::string shape = "2x2";
    int period = 1;
    int depth = default_toeplitz_depth;
    std::int64_t window = default_toeplitz_window;
    int level = 3;
    std::optional<std::string> seed, letter;
};

const char* class_name(ColumnClass c) {
    switch (c) {
        case ColumnClass::coincidence: return "coincidence";
        case ColumnClass::bijective: return "bijective";
        default: return "neither";
    }
}

const char* arm_name(ArmDirection d) {
    switch (d) {
        case ArmDirection::left: return "left";
        case ArmDirection::right: return "right";
        case ArmDirection::up: return "up";
        default: return "down";
    }
}

void run_analyze(const AnalyzeArgs& args, Report& report) {
    const Substitution sub = load(args.sub, report);
    const auto& a = sub.alphabet();
    report.inputs["analysis"] = args.analysis;
    if (args.analysis == "legal") {
        const Shape shape = parse_shape(args.shape);
        report.inputs["shape"] = shape_string(shape);
        const auto set = legal_patterns(sub, shape);
        report.outputs["count"] = set.size();
        ordered_json list = ordered_json::array();
        for (const auto& p : set.members) list.push_back(format_block(a, p));
        report.outputs["patterns"] = list;
        report.text << "legal " << shape_string(shape) << " patterns: " << set.size() << "\n" << format_pattern_set(a, set);
    } else if (args.analysis == "seeds") {
        report.inputs["period"] = args.period;
        const auto seeds = enumerate_seeds(sub, args.period);
        report.outputs["count"] = seeds.size();
        ordered_json list = ordered_json::array();
        report.text << "seeds of period " << args.period << ": " << seeds.size() << "\n";
        for (const auto& s : seeds) {
            list.push_back(format_block(a, s.letters));
            report.text << "  " << format_block(a, s.letters) << (seed_is_recurrent(sub, s) ? "" : "  (not recurrent)") << "\n";
        }
        report.outputs["seeds"] = list;
    } else if (args.analysis == "columns") {
        report.inputs["level"] = args.level;
        const auto cs = column_structure(sub, args.level);
        report.outputs["classification"] = class_name(cs.classification);
        report.outputs["coincidence_level"] = cs.coincidence_level;
        report.text << "columns: " << class_name(cs.classification) << "\n";
        if (cs.coincidence_level > 0)
            report.text << "coincidence at level " << cs.coincidence_level << ", position (" << cs.coincidence_position.row << ","
                        << cs.coincidence_position.col << "), letter " << a.name(cs.coincidence_letter) << "\n";
    } else if (args.analysis == "frames") {
        report.inputs["level"] = args.level;
        ordered_json frames = ordered_json::object();
        for (Letter l = 0; l < sub.size(); ++l) {
            if (args.letter && a.name(l) != *args.letter) continue;
            const auto f = supertile_frame(sub, l, args.level);
            ordered_json j = {{"top", format_block(a, f.top)},
                              {"bottom", format_block(a, f.bottom)},
                              {"left", format_block(a, f.left)},
                              {"right", format_block(a, f.right)},
                              {"interior_fingerprint", f.interior_fingerprint}};
            frames[a.name(l)] = j;
            report.text << a.name(l) << ": top " << j["top"].get<std::string>() << " | bottom " << j["bottom"].get<std::string>() << " | left "
                        << j["left"].get<std::string>() << " | right " << j["right"].get<std::string>() << " | interior " << std::hex
                        << f.interior_fingerprint << std::dec << "\n";
        }
        report.outputs["frames"] = frames;
    } else if (args.analysis == "corners") {
        const auto cr = corner_configurations(sub);
        ordered_json list = ordered_json::array();
        for (const auto& q : cr.quartets) {
            ordered_json j = {{"seed", format_block(a, q.seed.letters)}};
            auto opt = [&](const std::optional<Letter>& x) { return x ? ordered_json(a.name(*x)) : ordered_json(nullptr); };
            j["center"] = opt(q.center_letter);
            j["left"] = opt(q.left);
            j["right"] = opt(q.right);
            j["up"] = opt(q.up);
            j["down"] = opt(q.down);
            ordered_json arms = ordered_json::array();
            for (const auto& arm : q.arms) arms.push_back({{"direction", arm_name(arm.direction)}, {"line", arm.line}, {"label", opt(arm.label)}});
            j["arms"] = arms;
            list.push_back(j);
            report.text << format_block(a, q.seed.letters) << ": ";
            if (q.center_letter) {
                report.text << "center " << a.name(*q.center_letter) << ", left " << a.name(*q.left) << ", right " << a.name(*q.right) << ", up "
                            << a.name(*q.up) << ", down " << a.name(*q.down) << "\n";
                continue;
            }
            report.text << "arms";
            for (const auto& arm : q.arms) report.text << " " << arm_name(arm.direction) << arm.line << "=" << (arm.label ? a.name(*arm.label) : "?");
            report.text << "\n";
        }
        report.outputs["quartets"] = list;
        ordered_json h = ordered_json::array(), v = ordered_json::array();
        for (Letter l : cr.horizontal_lines) h.push_back(a.name(l));
        for (Letter l : cr.vertical_lines) v.push_back(a.name(l));
        report.outputs["horizontal_lines"] = h;
        report.outputs["vertical_lines"] = v;
        report.text << "horizontal separating lines: " << h.dump() << "\nvertical separating lines: " << v.dump() << "\n";
    } else if (args.analysis == "toeplitz") {
        if (sub.dim() != 1) throw std::invalid_argument("toeplitz analysis needs a 1D substitution");
        const int period = seed_period(sub);
        const Seed seed = args.seed ? parse_seed(sub, *args.seed, period) : enumerate_seeds(sub, period).at(0);
        report.inputs["seed"] = format_block(a, seed.letters);
        report.inputs["depth"] = args.depth;
        report.inputs["window"] = args.window;
        const auto c = coordinatize(sub, seed, args.depth, args.window);
        ordered_json systems = ordered_json::object();
        report.text << "seed " << format_block(a, seed.letters) << ", depth " << c.depth << ", window " << c.window << "\n";
        for (const auto& cs : c.systems) {
            ordered_json prog = ordered_json::array();
            for (const auto& p : cs.progressions) prog.push_back(std::to_string(p.modulus) + "*Z + " + std::to_string(p.residue));
            systems[a.name(cs.letter)] = {{"progressions", prog},
                                          {"exceptional", std::vector<std::int64_t>(cs.exceptional.begin(), cs.exceptional.end())},
                                          {"unresolved", cs.unresolved.size()}};
            report.text << a.name(cs.letter) << ":\n" << format_coset_system(cs);
            if (!cs.unresolved.empty()) report.text << "unresolved positions: " << cs.unresolved.size() << "\n";
        }
        report.outputs["systems"] = systems;
        report.outputs["resolved_density"] = resolved_density(c).str();
    } else if (args.analysis == "matrix") {
        const IntMatrix m = substitution_matrix(sub);
        const auto poly = characteristic_polynomial(m);
        const auto roots = integer_roots(poly);
        ordered_json rows = ordered_json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            std::vector<std::int64_t> row(m.cols());
            for (Eigen::Index j = 0; j < m.cols(); ++j) row[static_cast<std::size_t>(j)] = m(i, j);
            rows.push_back(row);
        }
        report.outputs["matrix"] = rows;
        ordered_json eig = ordered_json::array();
        for (const auto& [r, mult] : roots.roots) eig.push_back({{"value", r.str()}, {"multiplicity", mult}});
        report.outputs["integer_eigenvalues"] = eig;
        report.outputs["primitive"] = is_primitive(sub);
        report.text << "substitution matrix:\n" << m << "\nprimitive: " << (is_primitive(sub) ? "yes" : "no") << "\ninteger eigenvalues:";
        for (const auto& [r, mult] : roots.roots) report.text << " " << r << (mult > 1 ? "^" + std::to_string(mult) : "");
        if (roots.cofactor.size() > 1) report.text << " (plus " << roots.cofactor.size() - 1 << " non-integer)";
        report.text << "\n";
        const Eigen::VectorXd v = perron_vector(sub);
        std::vector<double> freq(v.data(), v.data() + v.size());
        report.outputs["perron_vector"] = freq;
        report.text << "letter frequencies: " << v.transpose() << "\n";
    } else {
        throw std::invalid_argument("unknown analysis '" + args.analysis + "' (legal, seeds, columns, frames, corners, toeplitz, matrix)");
    }
}

// ------------------------------------------------------------------ factor

struct FactorArgs {
    SubstitutionArgs sub;
    std::optional<std::string> map_file, named, identify, search;
    std::string window = "1x2";
};

SlidingBlockMap named_map(const std::string& name) {
    if (name == "chi") return chi_map();
    if (name == "psi") return psi_map();
    if (name == "phi") return phi_map();
    if (name == "bar") return bar_removal_map();
    if (name == "tm") return thue_morse_projection();
    if (name == "squiral") return squiral_block_map();
    if (name == "table1") return table_factor_map(1);
    if (name == "table2") return table_factor_map(2);
    throw std::invalid_argument("unknown named map '" + name + "' (chi, psi, phi, bar, tm, squiral, table1, table2)");
}

void report_derived(const Derived& d, const Alphabet& source, Report& report) {
    if (d) {
        report.outputs["substitution"] = substitution_json(*d.substitution);
        report.text << format_substitution(*d.substitution);
        return;
    }
    report.status = exit_negative;
    report.outputs["witness"] = d.describe_witness(source);
    report.text << "inconsistent: " << d.describe_witness(source) << "\n";
}

void run_factor(const FactorArgs& args, Report& report) {
    const Substitution sub = load(args.sub, report);
    const int modes = int(bool(args.map_file)) + int(bool(args.named)) + int(bool(args.identify)) + int(bool(args.search));
    if (modes != 1) throw std::invalid_argument("give exactly one of --map, --named, --identify, --search");
    if (args.identify) {
        report.inputs["identify"] = *args.identify;
        report_derived(identify_symbols(sub, parse_identification(sub.alphabet(), *args.identify)), sub.alphabet(), report);
        return;
    }
    if (args.search) {
        const Shape window = parse_shape(args.window);
        report.inputs["search"] = *args.search;
        report.inputs["window"] = shape_string(window);
        SubstitutionArgs target = args.sub;
        target.name = *args.search;
        Report scratch;
        const Substitution tgt = load(target, scratch);
        const auto result = search_block_map(sub, tgt, window);
        report.outputs["candidates"] = result.candidates;
        report.outputs["squared"] = result.squared;
        if (result.status != SearchStatus::found) {
            report.status = exit_negative;
            report.outputs["status"] = result.status == SearchStatus::exhausted ? "exhausted" : "not_found";
            report.text << (result.status == SearchStatus::exhausted ? "search cap reached" : "no block map found") << " after " << result.candidates
                        << " candidates\n";
            return;
        }
        report.outputs["status"] = "found";
        report.outputs["map"] = format_block_map(*result.map);
        report.text << "found after " << result.candidates << " candidates" << (result.squared ? " (after squaring)" : "") << "\n"
                    << format_block_map(*result.map);
        return;
    }
    SlidingBlockMap map;
    if (args.named) {
        report.inputs["named"] = *args.named;
        map = named_map(*args.named);
    } else {
        report.inputs["map"] = *args.map_file;
        map = parse_block_map(read_file(*args.map_file), sub);
    }
    const auto check = check_block_map(sub, map);
    if (!check.ok()) {
        report.status = exit_negative;
        ordered_json missing = ordered_json::array(), illegal = ordered_json::array();
        for (const auto& p : check.missing) missing.push_back(format_block(sub.alphabet(), p));
        for (const auto& p : check.illegal) illegal.push_back(format_block(sub.alphabet(), p));
        report.outputs["missing"] = missing;
        report.outputs["illegal"] = illegal;
        report.text << "block map does not match the legal windows: missing " << missing.dump() << ", illegal " << illegal.dump() << "\n";
        return;
    }
    report_derived(induced_substitution(sub, map), sub.alphabet(), report);
}

// -------------------------------------------------------------------- zeta

struct ZetaArgs {
    SubstitutionArgs sub;
    std::string method = "ap";
    bool check = false;
    int terms = 12;
    int dim = 2;
    int q = 2;
};

int affordable_powers(const Substitution& sub) {
    const std::size_t cap = max_cells();
    int m = 0;
    double cells = 1;
    const double growth = static_cast<double>(sub.block_rows()) * sub.block_cols();
    while (m < 8 && cells * growth * static_cast<double>(sub.size()) <= static_cast<double>(cap)) {
        cells *= growth;
        ++m;
    }
    return std::max(1, m);
}

ordered_json counts_json(const std::vector<BigInt>& a) {
    ordered_json j = ordered_json::array();
    for (const auto& x : a) j.push_back(x.str());
    return j;
}

void run_zeta(const ZetaArgs& args, Report& report) {
    report.inputs["method"] = args.method;
    std::optional<RationalFunction> zeta;
    std::optional<Substitution> sub;
    if (args.sub.name == "solenoid") {
        report.inputs["name"] = "solenoid";
        report.inputs["dim"] = args.dim;
        report.inputs["q"] = args.q;
        zeta = solenoid_zeta(args.dim, args.q);
    } else {
        sub = load(args.sub, report);
        if (args.method == "ap") {
            zeta = zeta_ap(cohomology_of_hull(*sub).action.cochain);
        } else if (args.method == "closed") {
            zeta = closed_form_zeta(args.sub.name);
        } else if (args.method == "counts") {
            const auto a = periodic_point_counts(*sub, affordable_powers(*sub));
            report.outputs["counts"] = counts_json(a);
            report.text << "a_m:";
            for (const auto& x : a) report.text << " " << x;
            report.text << "\n";
            const auto r = zeta_from_counts(a);
            if (!r.zeta) {
                report.text << "too few terms for a rational reconstruction\n";
                return;
            }
            zeta = r.zeta;
        } else {
            throw std::invalid_argument("unknown method '" + args.method + "' (ap, closed, counts)");
        }
    }
    report.outputs["zeta"] = format_rational_function(*zeta);
    report.text << format_rational_function(*zeta) << "\n";
    const auto a = counts_from_zeta(*zeta, args.terms);
    const auto c = cycle_counts(a);
    report.outputs["a"] = counts_json(a);
    ordered_json cj = ordered_json::array();
    for (const auto& x : c.c) cj.push_back(x.str());
    report.outputs["c"] = cj;
    report.text << "a_m:";
    for (const auto& x : a) report.text << " " << x;
    report.text << "\nc_m:";
    for (const auto& x : c.c) report.text << " " << x;
    report.text << "\n";
    if (!args.check) return;
    bool ok = c.integral && c.euler_product_ok;
    ordered_json checks = ordered_json::object();
    checks["euler_product"] = c.euler_product_ok;
    if (sub && sub->constant_shape()) {
        const auto direct = periodic_point_counts(*sub, std::min(affordable_powers(*sub), args.terms));
        bool agree = true;
        for (std::size_t i = 0; i < direct.size(); ++i) agree = agree && direct[i] == a[i];
        checks["direct_counts"] = agree;
        report.text << "direct counts (" << direct.size() << " terms): " << (agree ? "agree" : "DISAGREE") << "\n";
        ok = ok && agree;
        if (args.method != "ap") {
            const auto ap = zeta_ap(cohomology_of_hull(*sub).action.cochain);
            checks["ap"] = ap == *zeta;
            report.text << "zeta_ap: " << format_rational_function(ap) << (ap == *zeta ? " (agrees)" : " (DIFFERS)") << "\n";
            ok = ok && ap == *zeta;
        }
        if (args.method != "closed") {
            try {
                const auto closed = closed_form_zeta(args.sub.name);
                checks["closed"] = closed == *zeta;
                report.text << "closed form: " << format_rational_function(closed) << (closed == *zeta ? " (agrees)" : " (DIFFERS)") << "\n";
                ok = ok && closed == *zeta;
            } catch (const std::invalid_argument&) {
            }
        }
    }
    report.outputs["checks"] = checks;
    report.text << "check: " << (ok ? "passed" : "FAILED") << "\n";
    if (!ok) report.status = exit_negative;
}

// -------------------------------------------------------------- cohomology

struct CohomologyArgs {
    SubstitutionArgs sub;
    std::optional<std::string> export_dir;
};

void run_cohomology(const CohomologyArgs& args, Report& report) {
    const Substitution sub = load(args.sub, report);
    const auto h = cohomology_of_hull(sub);
    ordered_json cells = ordered_json::array();
    for (int k = 0; k <= h.cw.d; ++k) cells.push_back(h.cw.count(k));
    report.outputs["collar_radius"] = h.cw.radius;
    report.outputs["cells"] = cells;
    ordered_json groups = ordered_json::object();
    for (int k = h.cw.d; k >= 0; --k) {
        const auto& g = h.groups[static_cast<std::size_t>(k)];
        groups["H" + std::to_string(k)] = format_invariants(g);
        report.text << "H" << k << " = " << format_invariants(g) << "\n";
        for (const auto& n : g.notes) report.text << "  note: " << n << "\n";
    }
    report.outputs["groups"] = groups;
    if (args.export_dir) {
        std::filesystem::create_directories(*args.export_dir);
        for (int k = 0; k <= h.cw.d; ++k) {
            std::ofstream a(*args.export_dir + "/action" + std::to_string(k) + ".txt");
            write_matrix(a, h.action.cochain[static_cast<std::size_t>(k)]);
            if (k > 0) {
                std::ofstream b(*args.export_dir + "/boundary" + std::to_string(k) + ".txt");
                write_matrix(b, h.cw.boundary[static_cast<std::size_t>(k)]);
            }
        }
        report.outputs["export"] = *args.export_dir;
        report.text << "matrices written to " << *args.export_dir << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Substitution tilings: factors, Toeplitz structure, zeta functions and cohomology"};
    app.require_subcommand(1);
    bool json = false, timing = false;
    app.add_flag("--json", json, "Machine-readable output");
    app.add_flag("--timing", timing, "Include wall-clock timing in the JSON report");

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Supertile or seed patch, as text or image");
    add_substitution_args(generate, gen.sub);
    generate->add_option("--level", gen.level, "Number of substitution steps");
    generate->add_option("--seed", gen.seed, "Legal seed, e.g. 'b|a' or 'a b / c d'");
    generate->add_option("--letter", gen.letter, "Letter whose supertile is generated");
    generate->add_option("-o,--output", gen.output, "Text output file");
    generate->add_option("--render", gen.render_path, "Write a .ppm or .svg image (default NAME.ppm)")->expected(0, 1);
    generate->add_option("--scale", gen.scale, "Pixels per cell");

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "legal | seeds | columns | frames | corners | toeplitz | matrix");
    add_substitution_args(analyze, an.sub);
    analyze->add_option("analysis", an.analysis)->required();
    analyze->add_option("--shape", an.shape, "Pattern shape RxC");
    analyze->add_option("--period", an.period, "Seed period");
    analyze->add_option("--depth", an.depth, "Toeplitz depth");
    analyze->add_option("--window", an.window, "Toeplitz window half-width");
    analyze->add_option("--level", an.level, "Supertile level");
    analyze->add_option("--seed", an.seed, "Seed for the Toeplitz fixed point");
    analyze->add_option("--letter", an.letter, "Restrict frames to one letter");

    FactorArgs fa;
    auto* factor = app.add_subcommand("factor", "Induced substitution of a block map or symbol identification");
    add_substitution_args(factor, fa.sub);
    factor->add_option("--map", fa.map_file, "Block map file");
    factor->add_option("--named", fa.named, "Built-in map: chi, psi, phi, bar, tm, squiral, table1, table2");
    factor->add_option("--identify", fa.identify, "Symbol identification, e.g. f=g");
    factor->add_option("--search", fa.search, "Search for a block map onto this target");
    factor->add_option("--window", fa.window, "Search window RxC");

    ZetaArgs ze;
    auto* zeta = app.add_subcommand("zeta", "Dynamical zeta function");
    add_substitution_args(zeta, ze.sub);
    zeta->add_option("--method", ze.method, "ap, closed or counts");
    zeta->add_flag("--check", ze.check, "Cross-validate against the other methods and direct counts");
    zeta->add_option("--terms", ze.terms, "Number of counts a_m printed");
    zeta->add_option("--dim", ze.dim, "Solenoid dimension");
    zeta->add_option("--q", ze.q, "Solenoid expansion factor");

    CohomologyArgs co;
    auto* cohomology = app.add_subcommand("cohomology", "Cech cohomology of the hull");
    add_substitution_args(cohomology, co.sub);
    cohomology->add_option("--export", co.export_dir, "Directory for boundary and action matrices");

    auto* cat = app.add_subcommand("catalog", "Catalog listing");
    auto* list = cat->add_subcommand("list", "List catalog names");
    cat->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_error;
    }

    Report report;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (generate->parsed()) {
            report.command = "generate";
            gen.render = generate->count("--render") > 0;
            run_generate(gen, report);
        } else if (analyze->parsed()) {
            report.command = "analyze";
            run_analyze(an, report);
        } else if (factor->parsed()) {
            report.command = "factor";
            run_factor(fa, report);
        } else if (zeta->parsed()) {
            report.command = "zeta";
            run_zeta(ze, report);
        } else if (cohomology->parsed()) {
            report.command = "cohomology";
            run_cohomology(co, report);
        } else if (list->parsed()) {
            report.command = "catalog list";
            report.outputs["names"] = catalog_names();
            for (const auto& n : catalog_names()) report.text << n << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "substfactor: " << e.what() << "\n";
        return exit_error;
    }
    if (json) {
        ordered_json out = {{"command", report.command}, {"inputs", report.inputs}, {"outputs", report.outputs}, {"status", report.status}};
        if (timing) out["timing"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << report.text.str();
    }
    return report.status;
}
