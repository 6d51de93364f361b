#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <bc/catalog.hpp>
#include <bc/cover.hpp>
#include <bc/fiber.hpp>
#include <bc/growth.hpp>
#include <bc/nielsen.hpp>

using nlohmann::json;

namespace {

const char* version = "bcyc 1.0";

struct input {
    std::string text;
    json doc;
};

std::string digest(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream o;
    o << std::hex << h;
    return o.str();
}

// A path to a JSON file, or @key / @key:sigma / @key:tau for a catalog entry.
input load(const std::string& src)
{
    input in;
    if (!src.empty() && src[0] == '@') {
        auto key = src.substr(1);
        std::string part;
        if (auto c = key.find(':'); c != std::string::npos) {
            part = key.substr(c + 1);
            key = key.substr(0, c);
        }
        auto e = bc::catalog_get(key);
        auto j = bc::to_json(e);
        if (e.as_pair) {
            j = j["pair"];
            if (part == "sigma" || part == "tau") j = j[part];
        } else if (e.as_cover) {
            j = j["cover"];
        } else if (e.as_nielsen) {
            j = j["nielsen"];
        } else {
            j = j["meta"];
        }
        in.doc = j;
        in.text = j.dump();
        return in;
    }
    std::ifstream f(src);
    if (!f) throw bc::bad_input("cannot read " + src);
    std::stringstream ss;
    ss << f.rdbuf();
    in.text = ss.str();
    try {
        in.doc = json::parse(in.text);
    } catch (const json::exception& e) {
        throw bc::bad_input(std::string("json parse: ") + e.what());
    }
    return in;
}

bc::cover load_cover(const std::string& src, std::string* text = nullptr)
{
    auto in = load(src);
    if (text) *text += in.text;
    if (in.doc.contains("sigma")) return bc::cover_from_json(in.doc["sigma"]);
    return bc::cover_from_json(in.doc);
}

struct reporter {
    bool as_json = false;
    json report;

    void begin(const std::string& command, const std::string& inputs)
    {
        report = json::object();
        report["command"] = command;
        report["version"] = version;
        report["input_digest"] = digest(inputs);
        report["notes"] = json::array();
        auto& c = bc::caps::get();
        report["caps"] = {{"order", c.group_order}, {"enum", c.enumerate}, {"normalizer", c.normalizer_degree},
                          {"nielsen", c.nielsen_search}};
    }
    void note(const std::string& s) { report["notes"].push_back(s); }
    void finish(const json& results, const std::string& text)
    {
        report["results"] = results;
        if (as_json)
            std::cout << report.dump(2) << "\n";
        else
            std::cout << text;
    }
};

std::string join_types(const std::vector<std::vector<std::size_t>>& ts)
{
    std::string s;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        s += i ? " " : "";
        s += "[";
        for (std::size_t k = 0; k < ts[i].size(); ++k) s += (k ? "," : "") + std::to_string(ts[i][k]);
        s += "]";
    }
    return s;
}

bc::tuple_t parse_element(const std::string& text, std::size_t n)
{
    bc::tuple_t t;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) t.push_back(bc::perm::parse(part, n));
    if (t.empty()) throw bc::bad_input("empty element");
    return t;
}

std::string flag(bool b) { return b ? "yes" : "no"; }

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Branch-cycle computations for covers of the projective line"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);
    reporter rep;
    app.add_flag("--json", rep.as_json, "Emit the full JSON report");

    std::string src, src2, joint_src, report_path, mode, element, pair_key, family, key;
    std::size_t at = 0, at2 = 0, degree = 0, max_degree = 6, which = 0;
    bool which_set = false;

    auto* validate_cmd = app.add_subcommand("validate", "Check branch-cycle conditions");
    validate_cmd->add_option("cover", src, "Cover JSON or @catalog-key")->required();
    auto* genus_cmd = app.add_subcommand("genus", "Genus by Riemann-Hurwitz");
    genus_cmd->add_option("cover", src)->required();
    auto* ggenus_cmd = app.add_subcommand("galois-genus", "Genus of the Galois closure");
    ggenus_cmd->add_option("cover", src)->required();
    auto* ochar_cmd = app.add_subcommand("ochar", "Orbifold characteristic");
    ochar_cmd->add_option("cover", src)->required();

    auto* fiber_cmd = app.add_subcommand("fiber", "Fiber product components and genuses");
    fiber_cmd->add_option("pair", src, "Pair JSON or @catalog-key")->required();
    fiber_cmd->add_option("--report", report_path, "Write the fiber report JSON here");

    auto* ni_cmd = app.add_subcommand("nielsen", "Nielsen classes");
    ni_cmd->require_subcommand(1);
    auto* ni_enum = ni_cmd->add_subcommand("enum", "Enumerate a Nielsen class");
    ni_enum->add_option("spec", src)->required();
    ni_enum->add_option("--mode", mode, "raw|inner|absolute");
    auto* ni_orbits = ni_cmd->add_subcommand("braid-orbits", "Braid orbits on a Nielsen class");
    ni_orbits->add_option("spec", src)->required();
    ni_orbits->add_option("--mode", mode, "raw|inner|absolute");
    auto* ni_coal = ni_cmd->add_subcommand("coalesce", "Coalesce adjacent entries of a tuple");
    ni_coal->add_option("element", element, "Entries separated by ';'")->required();
    ni_coal->add_option("--at", at, "Position i (entries i and i+1, or i and --with)")->required();
    ni_coal->add_option("--with", at2, "Second position");
    ni_coal->add_option("--degree", degree, "Degree of the entries")->required();
    ni_coal->add_option("--spec", src2, "Nielsen spec whose group decides the restricted flag");

    auto* screen_cmd = app.add_subcommand("screen", "Screening flags for g1 against a projection cover");
    screen_cmd->add_option("prW", src)->required();
    screen_cmd->add_option("g1", src2)->required();
    screen_cmd->add_option("--joint", joint_src, "Paired cover for the reducibility check");

    auto* cat_cmd = app.add_subcommand("catalog", "Built-in examples");
    cat_cmd->require_subcommand(1);
    auto* cat_list = cat_cmd->add_subcommand("list", "List keys");
    auto* cat_get = cat_cmd->add_subcommand("get", "Print an entry");
    cat_get->add_option("key", key)->required();

    auto* growth_cmd = app.add_subcommand("growth", "Component genus as g1 grows");
    growth_cmd->add_option("--pair", pair_key, "Catalog key or pair JSON path")->required();
    growth_cmd->add_option("--g1-family", family, "chebychev-aligned|chebychev-generic|dihedral-generic")->required();
    growth_cmd->add_option("--max-degree", max_degree);
    auto* comp_opt = growth_cmd->add_option("--component", which, "Component index (1-based); all if omitted");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 4;
    }
    which_set = comp_opt->count() > 0;

    try {
        std::ostringstream out;
        json res;

        if (*validate_cmd) {
            std::string text;
            auto c = load_cover(src, &text);
            rep.begin("validate", text);
            auto v = bc::validate(c);
            res = {{"valid", v.valid()},
                   {"well_formed", v.well_formed},
                   {"no_identity", v.no_identity},
                   {"product_one", v.product_one},
                   {"transitive", v.transitive},
                   {"cycle_types", v.cycle_types},
                   {"problems", v.problems}};
            out << (v.valid() ? "valid" : "invalid") << "\n";
            out << "cycle types: " << join_types(v.cycle_types) << "\n";
            for (auto& p : v.problems) out << "problem: " << p << "\n";
            rep.finish(res, out.str());
            return v.valid() ? 0 : 2;
        }
        if (*genus_cmd || *ggenus_cmd || *ochar_cmd) {
            std::string text;
            auto c = load_cover(src, &text);
            if (*genus_cmd) {
                rep.begin("genus", text);
                auto g = bc::genus(c);
                res = {{"genus", g}, {"index_sum", c.index_sum()}, {"degree", c.degree}};
                out << g << "\n";
            } else if (*ggenus_cmd) {
                rep.begin("galois-genus", text);
                auto g = bc::galois_closure_genus(c);
                res = {{"galois_genus", g}, {"group_order", c.monodromy().order()}};
                out << g << "\n";
            } else {
                rep.begin("ochar", text);
                auto q = bc::orbifold_char(c);
                res = {{"ochar", bc::to_string(q)}};
                out << bc::to_string(q) << "\n";
            }
            rep.finish(res, out.str());
            return 0;
        }
        if (*fiber_cmd) {
            auto in = load(src);
            auto pc = bc::paired_from_json(in.doc);
            rep.begin("fiber", in.text);
            auto chk = bc::check_pair(pc);
            if (!chk.ok()) throw bc::invalid("paired cover invariants fail");
            res = bc::fiber_report(pc);
            if (bc::base_genus(pc.tau) != 0) rep.note("tau cover has positive genus; projection covers omitted");
            out << "components: " << res["components"].size() << "\n";
            for (auto& c : res["components"]) {
                out << "  deg_z=" << c["deg_z"] << " k=" << c["k"] << " l=" << c["l"] << " J=" << c["J"].get<std::string>()
                    << " I=" << c["I"].get<std::string>() << " genus_m1=" << c["genus_m1"] << " genus_m2=" << c["genus_m2"]
                    << " index=" << c["subgroup_index"] << "\n";
                if (c.contains("pry_cover")) {
                    out << "    pry:";
                    for (auto& s : c["pry_cover"]["cycles"]) out << " " << s.get<std::string>();
                    out << "\n";
                }
            }
            if (!report_path.empty()) {
                std::ofstream f(report_path);
                if (!f) throw bc::bad_input("cannot write " + report_path);
                f << res.dump(2) << "\n";
            }
            rep.finish(res, out.str());
            return 0;
        }
        if (*ni_enum || *ni_orbits) {
            auto in = load(src);
            auto spec = bc::nielsen_from_json(in.doc);
            if (!mode.empty()) spec.mode = bc::parse_equivalence(mode);
            rep.begin(*ni_enum ? "nielsen enum" : "nielsen braid-orbits", in.text);
            if (*ni_enum) {
                auto r = bc::enumerate(spec);
                rep.note("mode: " + r.mode_used);
                res["count"] = r.elements.size();
                res["raw_count"] = r.raw_count;
                res["mode"] = r.mode_used;
                auto& el = res["elements"] = json::array();
                for (auto& t : r.elements) el.push_back(bc::tuple_str(t));
                out << r.elements.size() << "\n";
                out << "raw: " << r.raw_count << "\nmode: " << r.mode_used << "\n";
                for (auto& t : r.elements) out << "  " << bc::tuple_str(t) << "\n";
            } else {
                auto r = bc::braid_orbits(spec);
                rep.note("mode: " + r.mode_used);
                res["mode"] = r.mode_used;
                auto& orbs = res["orbits"] = json::array();
                out << "orbits: " << r.orbits.size() << "\nmode: " << r.mode_used << "\n";
                for (auto& o : r.orbits) {
                    json jo = json::array();
                    for (auto k : o) jo.push_back(bc::tuple_str(r.elements[k]));
                    orbs.push_back(jo);
                    out << "  length " << o.size() << "\n";
                }
            }
            rep.finish(res, out.str());
            return 0;
        }
        if (*ni_coal) {
            if (degree < 1) throw bc::bad_input("degree must be positive");
            auto t = parse_element(element, degree);
            bc::group G(degree, t);
            std::string inputs = element;
            if (!src2.empty()) {
                auto in = load(src2);
                G = bc::nielsen_from_json(in.doc).G;
                inputs += in.text;
            }
            rep.begin("nielsen coalesce", inputs);
            auto r = bc::coalesce(G, t, at, at2);
            res = {{"tuple", bc::tuple_str(r.tuple)}, {"restricted", r.restricted}, {"dropped_identity", r.dropped_identity}};
            out << bc::tuple_str(r.tuple) << "\n";
            out << "restricted: " << flag(r.restricted) << "\n";
            if (r.dropped_identity) out << "identity entry dropped\n";
            rep.finish(res, out.str());
            return 0;
        }
        if (*screen_cmd) {
            std::string inputs;
            auto a = load_cover(src, &inputs);
            auto b = load_cover(src2, &inputs);
            std::optional<bc::paired_cover> joint;
            if (!joint_src.empty()) {
                auto in = load(joint_src);
                joint = bc::paired_from_json(in.doc);
                inputs += in.text;
            }
            rep.begin("screen", inputs);
            auto s = bc::screen_g1(a, b, joint);
            res = {{"pr_ochar", bc::to_string(s.pr_ochar)},
                   {"pr_genus", s.pr_genus},
                   {"pr_galois_genus", s.pr_galois_genus},
                   {"fail2a", s.fail2a},
                   {"fail2b", s.fail2b},
                   {"genus0_quotients", s.genus0_quotients.size()},
                   {"fail2c", s.fail2c},
                   {"fail2c_subset", s.fail2c_subset},
                   {"fail2c_dominated", s.fail2c_dominated},
                   {"fail2c_bound", s.fail2c_bound},
                   {"fail2d", s.fail2d},
                   {"joint_checked", s.joint_checked},
                   {"components", s.joint_components},
                   {"dec_var_not_excluded", s.dec_var_not_excluded}};
            out << "ochar(prW): " << bc::to_string(s.pr_ochar) << "\n";
            out << "fail2a: " << flag(s.fail2a) << "\nfail2b: " << flag(s.fail2b) << "\nfail2c: " << flag(s.fail2c)
                << "\nfail2d: " << (s.joint_checked ? flag(s.fail2d) : std::string("not checked")) << "\n";
            out << "components: " << s.joint_components << "\n";
            if (s.dec_var_not_excluded) out << "dec-var not excluded\n";
            rep.finish(res, out.str());
            return 0;
        }
        if (*cat_list) {
            rep.begin("catalog list", "");
            res = json::array();
            for (auto& k : bc::catalog_keys()) {
                auto e = bc::catalog_get(k);
                res.push_back({{"key", k}, {"description", e.description}});
                out << k << "  " << e.description << "\n";
            }
            rep.finish(res, out.str());
            return 0;
        }
        if (*cat_get) {
            rep.begin("catalog get", key);
            res = bc::to_json(bc::catalog_get(key));
            rep.finish(res, res.dump(2) + "\n");
            return 0;
        }
        if (*growth_cmd) {
            auto in = load(pair_key.find('.') == std::string::npos && pair_key[0] != '@' ? "@" + pair_key : pair_key);
            auto pc = bc::paired_from_json(in.doc);
            rep.begin("growth", in.text + family + std::to_string(max_degree));
            auto comps = bc::tensor_components(pc);
            if (which_set && (which < 1 || which > comps.size())) throw bc::bad_input("component index out of range");
            res = json::array();
            for (std::size_t j = 0; j < comps.size(); ++j) {
                if (which_set && j + 1 != which) continue;
                auto prW = bc::pry_branch_cycles(pc, comps[j]);
                json jc{{"component", j + 1}, {"l", comps[j].l}, {"prW", bc::to_json(prW)}};
                auto& rows = jc["rows"] = json::array();
                out << "component " << j + 1 << " (degree " << comps[j].l << " over y)\n";
                out << "  d  min_genus  genus0  flagged  components\n";
                for (auto& r : bc::growth_table(prW, family, max_degree)) {
                    rows.push_back(bc::to_json(r));
                    out << "  " << r.degree << "  " << r.min_genus << "  " << flag(r.has_genus0) << "  " << flag(r.flagged) << " ";
                    for (auto& [d, g] : r.components) out << " (" << d << ", g=" << g << ")";
                    out << "\n";
                }
                res.push_back(jc);
            }
            rep.finish(res, out.str());
            return 0;
        }
    } catch (const bc::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
        case bc::errc::invalid: return 2;
        case bc::errc::cap_exceeded: return 3;
        case bc::errc::bad_input: return 4;
        }
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
