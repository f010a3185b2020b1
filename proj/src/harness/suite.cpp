#include <atomic>
#include <charconv>
#include <cmath>
#include <future>
#include <mutex>
#include <sstream>
#include <thread>

#include "ballfun/errors.hpp"
#include "ballfun/harness.hpp"

namespace ballfun::harness {

namespace {

const char* kindName(CheckKind kind) {
    switch (kind) {
        case CheckKind::equivalence: return "equivalence";
        case CheckKind::inequality: return "inequality";
        case CheckKind::exact: return "exact";
    }
    return "unknown";
}

// Shortest round-trip decimal text; keeps reports byte-identical across
// locales and stream-state differences.
std::string numberText(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

nlohmann::json numberJson(double v) {
    if (std::isfinite(v)) return v;
    return numberText(v);
}

nlohmann::json statsJson(const RatioStats& s) {
    return {{"min", numberJson(s.min)},
            {"max", numberJson(s.max)},
            {"median", numberJson(s.median)},
            {"counted", s.counted}};
}

nlohmann::json recordsJson(const std::vector<FunctionRecord>& recs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : recs) {
        arr.push_back({{"lhs", numberJson(r.lhs)},
                       {"rhs", numberJson(r.rhs)},
                       {"ratio", numberJson(r.ratio)},
                       {"degenerate", r.degenerate}});
    }
    return arr;
}

void csvStage(std::ostringstream& out, const std::string& id, const char* stage,
              const std::vector<FunctionRecord>& recs) {
    for (std::size_t i = 0; i < recs.size(); ++i) {
        out << id << ',' << stage << ',' << i << ',' << numberText(recs[i].lhs) << ','
            << numberText(recs[i].rhs) << ',' << numberText(recs[i].ratio) << ','
            << (recs[i].degenerate ? 1 : 0) << '\n';
    }
}

}  // namespace

bool SuiteReport::allPass() const {
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

nlohmann::json SuiteReport::toJson() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json params;
        for (const auto& [k, v] : c.params) params[k] = numberJson(v);
        arr.push_back({{"id", c.id},
                       {"anchor", c.anchor},
                       {"kind", kindName(c.kind)},
                       {"params", params},
                       {"perFunction",
                        {{"base", recordsJson(c.base)},
                         {"doubled", recordsJson(c.doubled)},
                         {"budgeted", recordsJson(c.budgeted)}}},
                       {"ratioStats",
                        {{"base", statsJson(c.baseStats)},
                         {"doubled", statsJson(c.doubledStats)},
                         {"budgeted", statsJson(c.budgetedStats)}}},
                       {"degreeDrift", numberJson(c.degreeDrift)},
                       {"budgetDrift", numberJson(c.budgetDrift)},
                       {"degenerateCount", c.degenerateCount},
                       {"hardFail", c.hardFail},
                       {"pass", c.pass},
                       {"note", c.note}});
    }
    return {{"suite", name}, {"seed", seed}, {"checks", arr}};
}

std::string SuiteReport::toCsv() const {
    std::ostringstream out;
    out << "check,stage,index,lhs,rhs,ratio,degenerate\n";
    for (const auto& c : checks) {
        csvStage(out, c.id, "base", c.base);
        csvStage(out, c.id, "doubled", c.doubled);
        csvStage(out, c.id, "budgeted", c.budgeted);
    }
    return out.str();
}

SuiteReport runSuite(const SuiteConfig& config) {
    std::vector<std::string> ids = config.checkIds;
    if (ids.empty()) {
        for (const auto& info : registeredChecks()) ids.push_back(info.id);
    }

    SuiteReport report;
    report.name = config.name;
    report.seed = config.family.seed;
    report.checks.resize(ids.size());
    if (ids.empty()) return report;

    const int jobs = std::max(1, config.jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < ids.size(); ++i) {
            report.checks[i] = runCheck(ids[i], config.family, config.params);
        }
        return report;
    }

    // Work-stealing by index; results land in their slot, so the merged
    // report is identical for any worker count.
    std::atomic<std::size_t> next{0};
    std::exception_ptr firstError;
    std::mutex errorMutex;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= ids.size()) return;
            try {
                report.checks[i] = runCheck(ids[i], config.family, config.params);
            } catch (...) {
                std::lock_guard<std::mutex> lock(errorMutex);
                if (!firstError) firstError = std::current_exception();
            }
        }
    };
    std::vector<std::future<void>> pool;
    const int workers = std::min<std::size_t>(jobs, ids.size());
    for (int w = 0; w < workers; ++w) {
        pool.push_back(std::async(std::launch::async, worker));
    }
    for (auto& fut : pool) fut.get();
    if (firstError) std::rethrow_exception(firstError);
    return report;
}

}  // namespace ballfun::harness
