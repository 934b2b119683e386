#include <CLI11.hpp>
#include <json.hpp>

#include "flmod/moduleio.hpp"
#include "flmod/sen.hpp"
#include "flmod/suites.hpp"
#include "flmod/witt.hpp"

#include <iostream>

using json = nlohmann::json;
using namespace flmod;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

json report_json(const Report& rep) {
    json cases = json::array();
    for (const auto& c : rep.cases)
        cases.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"cases", cases}, {"pass", rep.all_pass()}};
}

int print_report(const Report& rep, bool as_json, const std::string& schema) {
    if (as_json) {
        json out = report_json(rep);
        out["schema"] = schema;
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& c : rep.cases) {
            std::cout << (c.pass ? "pass" : "FAIL") << "  " << c.name;
            if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
            std::cout << "\n";
        }
        std::cout << (rep.all_pass() ? "all checks passed" : "CHECKS FAILED") << "\n";
    }
    return rep.all_pass() ? kExitPass : kExitVerifyFail;
}

/* homology groups live over Z/p^N, so an exponent-N generator is Z/p^N itself */
json divisors_json(const gmod::FPModule& m) {
    json a = json::array();
    for (int e : m.sorted_exps()) a.push_back(e);
    return a;
}

std::string divisors_text(const gmod::FPModule& m) {
    if (m.is_zero()) return "0";
    std::string out;
    for (int e : m.sorted_exps()) {
        if (!out.empty()) out += " (+) ";
        out += "Z/" + std::to_string(m.ctx->p()) + "^" + std::to_string(e);
    }
    return out;
}

std::string matrix_text(const gmod::Mat& m) {
    std::string out;
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out += " ";
            const auto& c = m.at(i, j).coeffs();
            for (size_t l = 0; l < c.size(); ++l) out += (l ? "," : "") + c[l].str();
        }
        out += "\n";
    }
    return out;
}

json matrix_json(const gmod::Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) {
            json entry = json::array();
            for (const auto& c : m.at(i, j).coeffs()) entry.push_back(c.str());
            row.push_back(entry);
        }
        rows.push_back(row);
    }
    return rows;
}

struct ErrorJson {
    bool as_json = false;
    int report(const std::string& kind, const std::string& msg, int code) const {
        if (as_json) {
            std::cout << json{{"schema", "flmod/v1/error"}, {"error", kind}, {"message", msg}}
                             .dump(2)
                      << "\n";
        } else {
            std::cerr << "error (" << kind << "): " << msg << "\n";
        }
        return code;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verifier for Witt-vector, divided-power and Fontaine-Laffaille identities"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    // mazur-numbers
    auto* mn = app.add_subcommand("mazur-numbers", "table of Mazur numbers [n]");
    long mn_p = 2;
    long mn_max = 16;
    mn->add_option("--p", mn_p, "prime")->required();
    mn->add_option("--max", mn_max, "largest n");

    // verify
    auto* vf = app.add_subcommand("verify", "run a verification suite");
    long vf_p = 2;
    int vf_len = 0, vf_window = 0;
    std::string vf_suite = "all";
    vf->add_option("--p", vf_p, "prime")->required();
    vf->add_option("--witt-len", vf_len, "Witt vector length (default per prime)");
    vf->add_option("--window", vf_window, "degree window bound (default p^len + p)");
    vf->add_option("--suite", vf_suite,
                   "all | pd | divisibility | bigwitt | psi-maz | di-matrix | effectivity | "
                   "tor1 | witt-identities");

    // fl
    auto* flc = app.add_subcommand("fl", "Fontaine-Laffaille module operations");
    flc->require_subcommand(1);
    flc->fallthrough();
    std::string fl_in, fl_in2;
    int fl_i = 0, fl_prec = 0;
    auto* fl_check = flc->add_subcommand("check", "validate a module file");
    fl_check->add_option("--in", fl_in)->required();
    auto* fl_kernel_cmd = flc->add_subcommand("kernel", "kernel of a morphism file");
    fl_kernel_cmd->add_option("--in", fl_in)->required();
    auto* fl_coker_cmd = flc->add_subcommand("cokernel", "cokernel of a morphism file");
    fl_coker_cmd->add_option("--in", fl_in)->required();
    auto* fl_ext = flc->add_subcommand("ext1", "Hom and Ext^1 dimensions of a pair");
    fl_ext->add_option("--in", fl_in)->required();
    fl_ext->add_option("--in2", fl_in2)->required();
    auto* fl_lift = flc->add_subcommand("lift", "torsion-free lift of a mod-p module");
    fl_lift->add_option("--in", fl_in)->required();
    fl_lift->add_option("--prec", fl_prec, "target precision (default max(2, N))");
    auto* fl_twist = flc->add_subcommand("twist", "Tate twist by --i");
    fl_twist->add_option("--in", fl_in)->required();
    fl_twist->add_option("--i", fl_i, "twist amount")->required();

    // syn
    auto* sy = app.add_subcommand("syn", "syntomic cohomology of a module file");
    std::string sy_in;
    int sy_weight = 0;
    bool sy_cross = false;
    sy->add_option("--in", sy_in)->required();
    sy->add_option("--weight", sy_weight)->required();
    sy->add_flag("--crosscheck", sy_cross, "also run the Hom/Ext crosscheck");

    // sen
    auto* se = app.add_subcommand("sen", "reduced-locus Sen operator tools");
    se->require_subcommand(1);
    se->fallthrough();
    std::string se_in;
    auto* se_theta = se->add_subcommand("theta", "Sen operator matrix on F^0");
    se_theta->add_option("--in", se_in)->required();
    auto* se_alpha = se->add_subcommand("alpha", "nilpotent correction matrix");
    se_alpha->add_option("--in", se_in)->required();
    auto* se_apply = se->add_subcommand("apply", "apply the comparison endofunctor");
    se_apply->add_option("--in", se_in)->required();
    auto* se_class = se->add_subcommand("ext-class", "extension class of a standard extension");
    se_class->add_option("--in", se_in)->required();

    // selftest
    auto* st = app.add_subcommand("selftest", "run the full acceptance suite with timing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }
    ErrorJson err{as_json};

    try {
        if (mn->parsed()) {
            auto table = arith::mazur_table(mn_p, mn_max);
            if (as_json) {
                json vals = json::array();
                for (long v : table) vals.push_back(v);
                std::cout << json{{"schema", "flmod/v1/mazur-numbers"},
                                  {"p", mn_p},
                                  {"values", vals}}
                                 .dump(2)
                          << "\n";
            } else {
                for (size_t n = 0; n < table.size(); ++n)
                    std::cout << "[" << n + 1 << "] = " << table[n] << "\n";
            }
            return kExitPass;
        }

        if (vf->parsed()) {
            if (vf_len == 0) vf_len = witt::default_witt_len(vf_p);
            if (vf_window == 0) {
                long w = 1;
                for (int i = 0; i < vf_len; ++i) w *= vf_p;
                vf_window = static_cast<int>(w + vf_p);
            }
            if (vf_len > witt::default_witt_len(vf_p))
                std::cerr << "note: witt-len " << vf_len
                          << " is above the default for p = " << vf_p
                          << "; table generation may be slow\n";
            Report rep = suites::run_suite(vf_suite, vf_p, vf_len, vf_window);
            return print_report(rep, as_json, "flmod/v1/verify");
        }

        if (flc->parsed()) {
            if (fl_check->parsed()) {
                auto doc = io::parse_module_file(fl_in);
                if (doc.kind == "mazur") {
                    auto v = mazsyn::mazur_validate(doc.as_mazur());
                    if (as_json)
                        std::cout << json{{"schema", "flmod/v1/fl-check"},
                                          {"kind", "mazur"},
                                          {"valid", v.valid},
                                          {"detail", v.detail}}
                                         .dump(2)
                                  << "\n";
                    else
                        std::cout << (v.valid ? "valid mazur module"
                                              : "INVALID: " + v.detail)
                                  << "\n";
                    return v.valid ? kExitPass : kExitVerifyFail;
                }
                auto v = fl::fl_validate(doc.mod);
                if (as_json)
                    std::cout << json{{"schema", "flmod/v1/fl-check"},
                                      {"kind", "fl"},
                                      {"valid", v.valid},
                                      {"certified", v.certified},
                                      {"detail", v.detail}}
                                     .dump(2)
                              << "\n";
                else
                    std::cout << (v.valid ? "valid fl module" : "INVALID: " + v.detail) << "\n";
                return v.valid ? kExitPass : kExitVerifyFail;
            }
            if (fl_kernel_cmd->parsed() || fl_coker_cmd->parsed()) {
                auto doc = io::parse_morphism_file(fl_in);
                io::ModuleDoc out;
                out.kind = "fl";
                if (fl_kernel_cmd->parsed())
                    out.mod = fl::fl_kernel(doc.morphism()).ker;
                else
                    out.mod = fl::fl_cokernel(doc.morphism()).coker;
                if (as_json)
                    std::cout << json{{"schema", "flmod/v1/fl-module"},
                                      {"module", io::emit_module(out)}}
                                     .dump(2)
                              << "\n";
                else
                    std::cout << io::emit_module(out);
                return kExitPass;
            }
            if (fl_ext->parsed()) {
                auto a = io::parse_module_file(fl_in);
                auto b = io::parse_module_file(fl_in2);
                auto he = fl::fl_hom_ext1(a.mod, b.mod);
                if (as_json)
                    std::cout << json{{"schema", "flmod/v1/fl-ext1"},
                                      {"hom_dim", he.hom_dim},
                                      {"ext1_dim", he.ext_dim}}
                                     .dump(2)
                              << "\n";
                else
                    std::cout << "dim_Fp Hom = " << he.hom_dim
                              << "\ndim_Fp Ext^1 = " << he.ext_dim << "\n";
                return kExitPass;
            }
            if (fl_lift->parsed()) {
                auto doc = io::parse_module_file(fl_in);
                int prec = fl_prec > 0 ? fl_prec : std::max(2, doc.mod.ctx()->N());
                io::ModuleDoc out;
                out.kind = "fl";
                out.mod = fl::torsionfree_lift(doc.mod, prec);
                std::cout << io::emit_module(out);
                return kExitPass;
            }
            if (fl_twist->parsed()) {
                auto doc = io::parse_module_file(fl_in);
                io::ModuleDoc out;
                out.kind = doc.kind;
                out.mod = fl::twist(doc.mod, fl_i);
                std::cout << io::emit_module(out);
                return kExitPass;
            }
        }

        if (sy->parsed()) {
            auto doc = io::parse_module_file(sy_in);
            mazsyn::SynResult h = doc.kind == "mazur"
                                      ? mazsyn::syntomic_cohomology(doc.as_mazur(), sy_weight)
                                      : mazsyn::syntomic_cohomology(doc.mod, sy_weight);
            json out{{"schema", "flmod/v1/syn"},
                     {"weight", sy_weight},
                     {"H0", divisors_json(h.h0)},
                     {"H1", divisors_json(h.h1)}};
            bool pass = true;
            if (sy_cross) {
                auto r = mazsyn::syn_vs_ext_crosscheck(doc.mod, sy_weight);
                pass = r.pass;
                out["crosscheck"] = {{"pass", r.pass},
                                     {"hom_dim", r.hom},
                                     {"ext1_dim", r.ext}};
            }
            if (as_json) {
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << "H0 = " << divisors_text(h.h0) << "\nH1 = " << divisors_text(h.h1)
                          << "\n";
                if (sy_cross)
                    std::cout << "crosscheck vs (Hom, Ext^1): " << (pass ? "pass" : "FAIL")
                              << "\n";
            }
            return pass ? kExitPass : kExitVerifyFail;
        }

        if (se->parsed()) {
            auto doc = io::parse_module_file(se_in);
            if (se_theta->parsed()) {
                auto t = sen::sen_theta(doc.mod);
                if (as_json)
                    std::cout << json{{"schema", "flmod/v1/sen-theta"},
                                      {"matrix", matrix_json(t)}}
                                     .dump(2)
                              << "\n";
                else
                    std::cout << matrix_text(t);
                return kExitPass;
            }
            if (se_alpha->parsed()) {
                auto a = sen::alpha(doc.mod);
                if (as_json)
                    std::cout << json{{"schema", "flmod/v1/sen-alpha"},
                                      {"zero", a.zero},
                                      {"matrix", matrix_json(a.alpha)}}
                                     .dump(2)
                              << "\n";
                else
                    std::cout << matrix_text(a.alpha);
                return kExitPass;
            }
            if (se_apply->parsed()) {
                io::ModuleDoc out;
                out.kind = "fl";
                out.mod = sen::di_maz_endofunctor(doc.mod);
                std::cout << io::emit_module(out);
                return kExitPass;
            }
            if (se_class->parsed()) {
                auto cls = sen::extension_class(doc.mod);
                if (as_json)
                    std::cout << json{{"schema", "flmod/v1/sen-ext-class"},
                                      {"value", cls.value.str()},
                                      {"splits", cls.splits}}
                                     .dump(2)
                              << "\n";
                else
                    std::cout << "class = " << cls.value.str()
                              << (cls.splits ? " (splits)" : " (nonsplit)") << "\n";
                return kExitPass;
            }
        }

        if (st->parsed()) {
            auto cases = suites::selftest();
            bool all = true;
            json jcases = json::array();
            for (const auto& c : cases) {
                all = all && c.pass;
                if (as_json) {
                    // wall-clock timing stays out of the JSON so identical
                    // inputs give byte-identical output
                    json fails = json::array();
                    for (const auto& f : c.failures)
                        fails.push_back({{"name", f.name}, {"detail", f.detail}});
                    jcases.push_back({{"criterion", c.index},
                                      {"title", c.title},
                                      {"pass", c.pass},
                                      {"failures", fails}});
                } else {
                    char buf[64];
                    std::snprintf(buf, sizeof buf, "%7.2fs", c.seconds);
                    std::cout << (c.pass ? "PASS" : "FAIL") << buf << "  criterion " << c.index
                              << ": " << c.title << "\n";
                    for (const auto& f : c.failures)
                        std::cout << "        failed case: " << f.name << " " << f.detail
                                  << "\n";
                }
            }
            if (as_json)
                std::cout << json{{"schema", "flmod/v1/selftest"},
                                  {"pass", all},
                                  {"criteria", jcases}}
                                 .dump(2)
                          << "\n";
            else
                std::cout << (all ? "selftest passed" : "SELFTEST FAILED") << "\n";
            return all ? kExitPass : kExitVerifyFail;
        }
    } catch (const io::FormatError& e) {
        return err.report("parse", e.what(), kExitUsage);
    } catch (const DomainError& e) {
        return err.report("usage", e.what(), kExitUsage);
    } catch (const Error& e) {
        return err.report("verification", e.what(), kExitVerifyFail);
    }
    return kExitUsage;
}
