#include "unlearn/cli.hpp"

#include <CLI11.hpp>

#include <fstream>

#include "unlearn/compression.hpp"
#include "unlearn/dimensions.hpp"
#include "unlearn/geometry.hpp"
#include "unlearn/instances.hpp"
#include "unlearn/io.hpp"
#include "unlearn/report.hpp"
#include "unlearn/scheme.hpp"

namespace unlearn {

namespace {

std::string bits_string(const Secret& z) {
    std::string s;
    for (int b : z) s += b ? '1' : '0';
    return s;
}

Secret parse_secret(const std::string& s, int p) {
    if (static_cast<int>(s.size()) != p) throw UsageError("--secret needs exactly " + std::to_string(p) + " bits");
    Secret z;
    for (char c : s) {
        if (c != '0' && c != '1') throw UsageError("--secret must be a 0/1 string");
        z.push_back(c - '0');
    }
    return z;
}

json answer_json(const Answer& a) {
    if (std::holds_alternative<bool>(a)) return std::get<bool>(a);
    return std::get<HypothesisId>(a).index;
}

int param_int(const json& p, const char* key, int fallback) {
    if (!p.contains(key)) return fallback;
    if (!p.at(key).is_number_integer()) throw UsageError(std::string("param '") + key + "' must be an integer");
    return p.at(key).get<int>();
}

int inv_beta_of(const json& p) {
    if (p.contains("inv_beta")) return param_int(p, "inv_beta", 2);
    if (p.contains("beta")) {
        double b = p.at("beta").get<double>();
        if (b <= 0 || b > 1) throw UsageError("beta must be in (0, 1]");
        double t = 1.0 / b;
        if (std::abs(t - std::round(t)) > 1e-9) throw InvalidInput("1/beta must be an integer");
        return static_cast<int>(std::lround(t));
    }
    return 2;
}

ClassHandle class_param(const json& p, std::mt19937_64& rng, const ClassHandle& fallback) {
    if (p.contains("class")) return class_from_json(p.at("class"), rng);
    return fallback;
}

LbInstance build_instance(const std::string& kind, const json& p, std::mt19937_64& rng) {
    if (kind == "vclb") return vclb_instance(inv_beta_of(p), param_int(p, "m", 8));
    if (kind == "eluder") {
        ClassHandle cls = class_param(p, rng, thresholds_1d(param_int(p, "m", 8)));
        DimValue e = eluder_dimension(cls);
        return eluder_lb_instance(cls, e.witness, param_int(p, "n", 2 * e.value));
    }
    if (kind == "shatter") {
        const int m = param_int(p, "m", 3);
        ClassHandle cls = class_param(p, rng, m <= 6 ? ClassHandle(all_labelings(m)) : ClassHandle(std::make_shared<const AllLabelingsOracle>(m)));
        DimValue vc = vc_dimension(cls);
        return shatter_lb_instance(cls, points_of(vc.witness));
    }
    if (kind == "halfspace") return halfspace_lb_instance(param_int(p, "d", 4), param_int(p, "k", 2));
    if (kind == "erm-whitebox") {
        std::string base = p.value("base", "eluder");
        if (base == "erm-whitebox") throw UsageError("base instance cannot itself be a reduction");
        return whitebox_erm_reduction(build_instance(base, p, rng));
    }
    throw UsageError("unknown instance '" + kind + "'");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact unlearning lab: dimensions, compression schemes and deletion schemes"};
    app.require_subcommand(1);

    // dims
    auto* dims = app.add_subcommand("dims", "Combinatorial dimensions of a class");
    std::string dims_class;
    int cap = kDefaultDimCap;
    bool witness = false;
    dims->add_option("class", dims_class, "class file")->required();
    dims->add_option("--cap", cap, "search cap");
    dims->add_flag("--witness", witness, "include witnesses");

    // vs-encode
    auto* enc = app.add_subcommand("vs-encode", "Version-space encoding of a dataset");
    std::string enc_class, enc_data;
    enc->add_option("class", enc_class)->required();
    enc->add_option("dataset", enc_data)->required();

    // merge
    auto* mrg = app.add_subcommand("merge", "Merge two encodings");
    std::string mrg_class, mrg_a, mrg_b;
    mrg->add_option("class", mrg_class)->required();
    mrg->add_option("encA", mrg_a)->required();
    mrg->add_option("encB", mrg_b)->required();

    // scheme run
    auto* scheme = app.add_subcommand("scheme", "Deletion schemes");
    scheme->require_subcommand(1);
    auto* srun = scheme->add_subcommand("run", "Learn on a dataset and answer deletion queries");
    std::string s_name, s_class, s_data, s_queries, s_record;
    int s_k = 1;
    srun->add_option("--scheme", s_name)->required()->check(CLI::IsMember(scheme_names()));
    srun->add_option("--k", s_k, "deletion budget for the bounded scheme");
    srun->add_option("--class", s_class)->required();
    srun->add_option("--dataset", s_data)->required();
    srun->add_option("--queries", s_queries)->required();
    srun->add_option("--record", s_record, "write the run record to this file");

    // lb demo
    auto* lb = app.add_subcommand("lb", "Lower-bound instances");
    lb->require_subcommand(1);
    auto* demo = lb->add_subcommand("demo", "Run the recovery adversary against a scheme");
    std::string lb_inst, lb_params = "{}", lb_scheme, lb_secret;
    int lb_k = 0;
    demo->add_option("--instance", lb_inst)->required()->check(CLI::IsMember({"vclb", "eluder", "shatter", "halfspace", "erm-whitebox"}));
    demo->add_option("--params", lb_params, "instance parameters as JSON");
    demo->add_option("--scheme", lb_scheme)->required()->check(CLI::IsMember(scheme_names()));
    demo->add_option("--secret", lb_secret, "secret bits; random when omitted");
    demo->add_option("--k", lb_k, "bounded scheme budget; defaults to the largest query");

    // report
    auto* rep = app.add_subcommand("report", "Bound-check report over run records");
    std::vector<std::string> rep_files;
    bool rep_standard = false;
    std::string rep_format = "both";
    rep->add_option("records", rep_files, "record files");
    rep->add_flag("--standard", rep_standard, "run the built-in suite");
    rep->add_option("--format", rep_format)->check(CLI::IsMember({"json", "table", "both"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        auto rng = seeded_rng();
        if (*dims) {
            ClassHandle cls = load_class(dims_class, rng);
            DimReport r = compute_dimensions(cls, cap);
            out << json{{"v", 1}, {"class", cls.describe()}, {"dims", to_json(r, witness)}}.dump(2) << "\n";
        } else if (*enc) {
            ClassHandle cls = load_class(enc_class, rng);
            Dataset data = load_dataset(enc_data);
            VsEncoding e = vs_encode(cls, data);
            CostModel cost{cls.domain_size(), std::max(2, star_number(cls).value)};
            out << json{{"v", 1}, {"encoding", to_json(e)}, {"pair_count", e.pairs.size()}, {"bits", encoding_bits(e, cost)}}.dump(2)
                << "\n";
        } else if (*mrg) {
            ClassHandle cls = load_class(mrg_class, rng);
            VsEncoding e = merge(cls, load_encoding(mrg_a), load_encoding(mrg_b));
            out << json{{"v", 1}, {"encoding", to_json(e)}}.dump(2) << "\n";
        } else if (*srun) {
            ClassHandle cls = load_class(s_class, rng);
            Dataset data = load_dataset(s_data);
            auto queries = load_queries(s_queries);
            SchemeOptions opt;
            opt.k = s_k;
            auto sch = make_scheme(s_name, cls, opt);
            auto state = sch->learn(data);
            json qs = json::array();
            for (const auto& q : queries) {
                qs.push_back({{"indices", q.ids()}, {"answer", answer_json(state->unlearn(deletion_of(data, q)))}});
            }
            RunRecord rec = record_run(s_name, cls, *state, data, opt, compute_dimensions(cls));
            json outj = {{"v", 1}, {"scheme", s_name}, {"answer", answer_json(state->answer())}, {"queries", qs}, {"record", to_json(rec)}};
            if (!s_record.empty()) {
                std::ofstream f(s_record);
                if (!f) throw UsageError("cannot write '" + s_record + "'");
                f << to_json(rec).dump(2) << "\n";
            }
            out << outj.dump(2) << "\n";
        } else if (*demo) {
            json params = parse_json_text(lb_params, "--params");
            if (!params.is_object()) throw UsageError("--params must be a JSON object");
            LbInstance inst = build_instance(lb_inst, params, rng);
            Secret z;
            if (!lb_secret.empty()) {
                z = parse_secret(lb_secret, inst.p);
            } else {
                for (int i = 0; i < inst.p; ++i) z.push_back(inst.fixed[static_cast<std::size_t>(i)] >= 0 ? inst.fixed[static_cast<std::size_t>(i)] : static_cast<int>(rng() & 1U));
            }
            SchemeOptions opt;
            opt.k = lb_k;
            if (lb_k == 0) {
                // large enough for every query the plan can issue
                opt.k = static_cast<int>(inst.dataset_of(z).size());
            }
            auto sch = make_scheme(lb_scheme, inst.cls, opt);
            AdversaryRun run = run_adversary(inst, *sch, z);
            out << json{{"v", 1},
                        {"instance", inst.name},
                        {"scheme", sch->name()},
                        {"p", inst.p},
                        {"n", run.n},
                        {"secret", bits_string(z)},
                        {"recovered", bits_string(run.recovered)},
                        {"ok", run.recovered == z},
                        {"aux_bits", run.aux_bits},
                        {"max_ticket_bits", run.max_ticket_bits}}
                       .dump(2)
                << "\n";
        } else if (*rep) {
            std::vector<RunRecord> records;
            for (const auto& f : rep_files) {
                json j = read_json_file(f);
                if (j.contains("records")) {
                    for (const auto& r : j.at("records")) records.push_back(record_from_json(r));
                } else if (j.contains("record")) {
                    records.push_back(record_from_json(j.at("record")));
                } else {
                    records.push_back(record_from_json(j));
                }
            }
            if (rep_standard) {
                auto extra = standard_suite(rng);
                records.insert(records.end(), extra.begin(), extra.end());
            }
            if (rep_format != "table") out << report_json(records).dump(2) << "\n";
            if (rep_format == "both") out << "\n";
            if (rep_format != "json") out << report_table(records);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace unlearn
