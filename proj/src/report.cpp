#include "unlearn/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "unlearn/instances.hpp"
#include "unlearn/schemes_central.hpp"

namespace unlearn {

namespace {

BoundCheck check(std::string name, std::string formula, double bound, double measured) {
    return {std::move(name), std::move(formula), bound, measured, measured <= bound + 1e-9};
}

void sort_records(std::vector<RunRecord>& rs) {
    std::sort(rs.begin(), rs.end(), [](const RunRecord& a, const RunRecord& b) {
        return std::tie(a.scheme, a.cls, a.n, a.k) < std::tie(b.scheme, b.cls, b.n, b.k);
    });
}

}  // namespace

RunRecord record_run(const std::string& scheme, const ClassHandle& cls, const LearnedState& state, const Dataset& data,
                     const SchemeOptions& opt, const DimReport& dims) {
    RunRecord r;
    r.scheme = scheme;
    r.cls = cls.describe();
    r.n = data.size();
    r.k = scheme == "bounded" ? opt.k : 0;
    r.aux_bits = state.aux_bits();
    auto tickets = state.ticket_bits();
    for (auto t : tickets) {
        r.max_ticket_bits = std::max(r.max_ticket_bits, t);
        r.mean_ticket_bits += static_cast<double>(t);
    }
    if (!tickets.empty()) r.mean_ticket_bits /= static_cast<double>(tickets.size());
    r.dims = to_json(dims, false);

    const int m = cls.domain_size();
    const CostModel base{m, 0};
    const int z = base.z_bits();
    const std::size_t n = data.size();
    if (scheme == "trivial" || scheme == "erm-trivial") {
        double b = static_cast<double>(n) * z + count_bits(n);
        r.bounds.push_back(check("aux", "n*z_bits + count_bits(n)", b, static_cast<double>(r.aux_bits)));
    } else if (scheme == "bounded") {
        const int s = dims.hollow_star.value;
        r.bounds.push_back(check("aux", "hollow_star^(k+1)*(k*z_bits + count_bits(n)) + 1",
                                 bounded_aux_bound(s, opt.k, m, n), static_cast<double>(r.aux_bits)));
    } else if (scheme == "merkle" || scheme == "erm-merkle") {
        const int star = std::max(2, dims.star.value);
        const CostModel cost{m, opt.cap ? *opt.cap : star};
        const double depth = ceil_log2(std::max<std::size_t>(n, 1));
        const double b = (cost.header_bits() + static_cast<double>(star) * z) * depth + depth;
        r.bounds.push_back(check("ticket", "(header + max(2,star)*z_bits)*ceil(log2 n) + ceil(log2 n)", b,
                                 static_cast<double>(r.max_ticket_bits)));
        if (scheme == "merkle") {
            r.bounds.push_back(check("aux", "1", 1, static_cast<double>(r.aux_bits)));
        } else {
            r.bounds.push_back(check("aux", "ceil(log2 |H|)", ceil_log2(static_cast<std::uint64_t>(cls.finite().size())),
                                     static_cast<double>(r.aux_bits)));
        }
    } else if (scheme == "chain") {
        ChainParams p = opt.chain ? *opt.chain : *detect_chain_params(cls.finite());
        const double b = kChainCostConstant * (std::log2(static_cast<double>(p.d)) + std::log2(static_cast<double>(std::max<std::size_t>(n, 1))) +
                                               std::log2(static_cast<double>(p.domain)));
        r.bounds.push_back(check("aux+ticket", "4*(log2 d + log2 n + log2 |X|)", b,
                                 static_cast<double>(std::max(r.aux_bits, r.max_ticket_bits))));
    }
    return r;
}

json to_json(const RunRecord& r) {
    json b = json::array();
    for (const auto& c : r.bounds) {
        b.push_back({{"name", c.name}, {"formula", c.formula}, {"bound", c.bound}, {"measured", c.measured}, {"pass", c.pass}});
    }
    return {{"scheme", r.scheme},       {"class", r.cls},
            {"n", r.n},                 {"k", r.k},
            {"aux_bits", r.aux_bits},   {"max_ticket_bits", r.max_ticket_bits},
            {"mean_ticket_bits", r.mean_ticket_bits}, {"bounds", b},
            {"dims", r.dims}};
}

RunRecord record_from_json(const json& j) {
    RunRecord r;
    try {
        r.scheme = j.at("scheme").get<std::string>();
        r.cls = j.at("class").get<std::string>();
        r.n = j.at("n").get<std::size_t>();
        r.k = j.value("k", 0);
        r.aux_bits = j.at("aux_bits").get<std::uint64_t>();
        r.max_ticket_bits = j.value("max_ticket_bits", std::uint64_t{0});
        r.mean_ticket_bits = j.value("mean_ticket_bits", 0.0);
        r.dims = j.value("dims", json::object());
        for (const auto& c : j.at("bounds")) {
            r.bounds.push_back({c.at("name").get<std::string>(), c.at("formula").get<std::string>(), c.at("bound").get<double>(),
                                c.at("measured").get<double>(), c.at("pass").get<bool>()});
        }
    } catch (const json::exception& e) {
        throw UsageError(std::string("malformed run record: ") + e.what());
    }
    return r;
}

json report_json(std::vector<RunRecord> records) {
    sort_records(records);
    json rs = json::array();
    bool all = true;
    for (const auto& r : records) {
        rs.push_back(to_json(r));
        for (const auto& b : r.bounds) all = all && b.pass;
    }
    return {{"v", 1}, {"records", rs}, {"all_pass", all}};
}

std::string report_table(std::vector<RunRecord> records) {
    sort_records(records);
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-12s %-28s %5s %9s %11s  %s\n", "scheme", "class", "n", "aux_bits", "max_ticket", "bounds");
    out << line;
    for (const auto& r : records) {
        std::string bs;
        for (const auto& b : r.bounds) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "%s%s %.0f<=%.1f %s", bs.empty() ? "" : "; ", b.name.c_str(), b.measured, b.bound,
                          b.pass ? "pass" : "FAIL");
            bs += buf;
        }
        std::snprintf(line, sizeof line, "%-12s %-28s %5zu %9llu %11llu  ", r.scheme.c_str(), r.cls.c_str(), r.n,
                      static_cast<unsigned long long>(r.aux_bits), static_cast<unsigned long long>(r.max_ticket_bits));
        out << line << bs << "\n";
    }
    return out.str();
}

std::vector<RunRecord> standard_suite(std::mt19937_64& rng) {
    std::vector<RunRecord> out;
    auto run = [&](const std::string& scheme, const ClassHandle& cls, const Dataset& data, SchemeOptions opt) {
        DimReport dims = compute_dimensions(cls);
        auto s = make_scheme(scheme, cls, opt);
        auto state = s->learn(data);
        out.push_back(record_run(scheme, cls, *state, data, opt, dims));
    };
    auto random_data = [&](const FiniteClass& c, std::size_t n, bool realizable) {
        std::vector<LabeledPair> items;
        const int h = static_cast<int>(rng() % static_cast<std::uint64_t>(c.size()));
        for (std::size_t i = 0; i < n; ++i) {
            int x = static_cast<int>(rng() % static_cast<std::uint64_t>(c.domain_size()));
            int y = realizable ? c.label(h, x) : static_cast<int>(rng() & 1U);
            items.push_back({x, y});
        }
        return Dataset(items);
    };

    const FiniteClass th8 = thresholds_1d(8);
    run("merkle", th8, random_data(th8, 64, false), {});
    run("merkle", th8, random_data(th8, 64, true), {});
    run("erm-merkle", th8, random_data(th8, 64, true), {});
    run("trivial", th8, random_data(th8, 16, false), {});
    SchemeOptions b2;
    b2.k = 2;
    run("bounded", th8, random_data(th8, 8, false), b2);
    const FiniteClass ch = tilu_ub_class(3, 6);
    run("chain", ch, random_data(ch, 10, false), {});
    return out;
}

}  // namespace unlearn
