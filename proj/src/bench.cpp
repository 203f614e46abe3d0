#include "tspsd/bench.hpp"

#include "tspsd/random.hpp"
#include "tspsd/tsp.hpp"

#include <toml.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

namespace tspsd {

const char* to_string(Distribution d) noexcept
{
    switch (d) {
    case Distribution::uniform: return "uniform";
    case Distribution::gauss1: return "gauss1";
    case Distribution::gauss4: return "gauss4";
    }
    return "unknown";
}

Distribution parse_distribution(const std::string& text)
{
    if (text == "uniform") {
        return Distribution::uniform;
    }
    if (text == "gauss1") {
        return Distribution::gauss1;
    }
    if (text == "gauss4") {
        return Distribution::gauss4;
    }
    throw Error(ErrorCode::invalid_input, "unknown distribution '" + text + "'");
}

std::vector<Point2> gauss4_means()
{
    return {{0.25, 0.25}, {0.25, 0.75}, {0.75, 0.75}, {0.75, 0.25}};
}

namespace {

Point2 draw(Rng& rng, const GenSpec& spec)
{
    if (spec.distribution == Distribution::uniform) {
        return {rng.uniform(), rng.uniform()};
    }
    const double sd = std::sqrt(spec.sigma2);
    for (;;) {
        Point2 mu = spec.mean;
        if (spec.distribution == Distribution::gauss4) {
            mu = gauss4_means()[rng.index(4)];
        }
        const Point2 p{mu.x + sd * rng.normal(), mu.y + sd * rng.normal()};
        if (p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0) {
            return p;
        }
    }
}

}  // namespace

Instance generate(const GenSpec& spec)
{
    if (spec.n_customers == 0) {
        throw Error(ErrorCode::invalid_input, "need at least one customer");
    }
    if (spec.distribution != Distribution::uniform && !(spec.sigma2 > 0.0)) {
        throw Error(ErrorCode::invalid_input, "sigma2 must be positive");
    }
    Rng rng(spec.seed);
    Instance inst;
    inst.truck_speed = spec.truck_speed;
    inst.drone_speed = spec.drone_speed;
    inst.range = spec.range;
    for (std::size_t i = 0; i < spec.n_customers; ++i) {
        inst.customers.push_back(draw(rng, spec));
    }
    for (std::size_t i = 0; i < spec.n_drones; ++i) {
        inst.drone_bases.push_back(draw(rng, spec));
    }
    inst.validate();
    return inst;
}

double tsp_baseline(const Instance& inst, std::uint64_t seed)
{
    return lk_tour(inst.customers, seed).length / inst.truck_speed;
}

double tspd_baseline(const Instance& inst, std::uint64_t seed)
{
    const auto& pts = inst.customers;
    const Tour tour = lk_tour(pts, seed);
    if (pts.size() <= 2) {
        return tour.length / inst.truck_speed;
    }
    const double vt = inst.truck_speed;
    const double vd = inst.drone_speed;

    // cyclic truck route; leg i runs from route[i] to route[i+1] and may
    // carry a drone sortie to some skipped customer
    std::vector<std::size_t> route = tour.order;
    std::vector<std::optional<std::size_t>> sortie(route.size());
    auto leg_cost = [&](std::size_t a, std::size_t b, std::optional<std::size_t> c) {
        const double truck = dist(pts[a], pts[b]) / vt;
        if (!c) {
            return truck;
        }
        return std::max(truck, (dist(pts[a], pts[*c]) + dist(pts[*c], pts[b])) / vd);
    };

    for (;;) {
        const std::size_t n = route.size();
        if (n < 3) {
            break;
        }
        double best = -1e-12;
        std::optional<std::size_t> pick;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t in = (k + n - 1) % n;  // leg into route[k]
            if (sortie[in] || sortie[k]) {
                continue;
            }
            const std::size_t a = route[in];
            const std::size_t c = route[k];
            const std::size_t b = route[(k + 1) % n];
            const double delta = leg_cost(a, b, c) - leg_cost(a, c, std::nullopt) - leg_cost(c, b, std::nullopt);
            if (delta < best) {
                best = delta;
                pick = k;
            }
        }
        if (!pick) {
            break;
        }
        const std::size_t k = *pick;
        const std::size_t in = (k + n - 1) % n;
        sortie[in] = route[k];
        route.erase(route.begin() + static_cast<std::ptrdiff_t>(k));
        sortie.erase(sortie.begin() + static_cast<std::ptrdiff_t>(k));
    }

    double total = 0.0;
    for (std::size_t i = 0; i < route.size(); ++i) {
        total += leg_cost(route[i], route[(i + 1) % route.size()], sortie[i]);
    }
    return total;
}

std::vector<SweepCell> SweepConfig::cells() const
{
    std::vector<SweepCell> out;
    for (Distribution d : distributions) {
        for (double s2 : sigma2) {
            for (double l : range) {
                for (double r2 : rho2) {
                    for (double r1 : rho1) {
                        out.push_back(SweepCell{r1, r2, l, s2, d});
                    }
                }
            }
        }
    }
    return out;
}

Instance sweep_instance(const SweepConfig& config, const SweepCell& cell, std::uint64_t seed)
{
    GenSpec spec;
    spec.n_customers = config.n_customers;
    spec.n_drones = static_cast<std::size_t>(std::llround(cell.rho2 * static_cast<double>(config.n_customers)));
    spec.distribution = cell.distribution;
    spec.sigma2 = cell.sigma2;
    spec.seed = seed;
    spec.truck_speed = 1.0;
    spec.drone_speed = cell.rho1;
    spec.range = cell.range;
    return generate(spec);
}

SweepResult run_cell(const SweepConfig& config, const SweepCell& cell, std::uint64_t seed)
{
    const auto start = std::chrono::steady_clock::now();
    const Instance inst = sweep_instance(config, cell, seed);
    PipelineConfig pc;
    pc.algorithm = config.algorithm;
    pc.mode = config.mode;
    pc.params.rho1 = cell.rho1;
    pc.params.rho2 = cell.rho2;
    pc.params.seed = seed;
    const Plan plan = run(inst, pc);

    SweepResult r;
    r.cell = cell;
    r.algorithm = config.algorithm;
    r.mode = config.mode;
    r.seed = seed;
    r.n_customers = inst.num_customers();
    r.n_drones = inst.num_drones();
    r.objective = plan.objective;
    r.baseline_objective = tsp_baseline(inst, seed);
    r.savings = savings(r.baseline_objective, r.objective);
    r.tspd_objective = tspd_baseline(inst, seed);
    r.savings_tspd = savings(r.tspd_objective, r.objective);
    r.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

namespace {

std::string num(double v)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

double parse_double(const std::string& s)
{
    double v = 0.0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) {
        throw Error(ErrorCode::invalid_input, "CSV: bad number '" + s + "'");
    }
    return v;
}

std::uint64_t parse_u64(const std::string& s)
{
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) {
        throw Error(ErrorCode::invalid_input, "CSV: bad integer '" + s + "'");
    }
    return v;
}

// Identity of a row for resume and sorting: everything that selects the run.
std::string key_of(const SweepResult& r)
{
    return num(r.cell.rho1) + "," + num(r.cell.rho2) + "," + num(r.cell.range) + "," + num(r.cell.sigma2) + ","
         + to_string(r.cell.distribution) + "," + to_string(r.algorithm) + "," + to_string(r.mode) + ","
         + std::to_string(r.seed) + "," + std::to_string(r.n_customers);
}

auto sort_key(const SweepResult& r)
{
    return std::make_tuple(static_cast<int>(r.cell.distribution), r.cell.sigma2, r.cell.range, r.cell.rho2,
                           r.cell.rho1, static_cast<int>(r.algorithm), static_cast<int>(r.mode), r.n_customers,
                           r.seed);
}

void sort_rows(std::vector<SweepResult>& rows)
{
    std::sort(rows.begin(), rows.end(),
              [](const SweepResult& a, const SweepResult& b) { return sort_key(a) < sort_key(b); });
}

void write_all(const std::filesystem::path& path, const std::vector<SweepResult>& rows)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::io, "cannot write " + tmp.string());
        }
        out << csv_header() << '\n';
        for (const auto& r : rows) {
            out << csv_row(r) << '\n';
        }
        if (!out.flush()) {
            throw Error(ErrorCode::io, "write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw Error(ErrorCode::io, "cannot replace " + path.string() + ": " + ec.message());
    }
}

}  // namespace

std::string csv_header()
{
    return "rho1,rho2,L,sigma2,distribution,algorithm,mode,seed,n_customers,n_drones,objective,"
           "baseline_objective,savings,tspd_objective,savings_tspd,runtime_s";
}

std::string csv_row(const SweepResult& r)
{
    return key_of(r) + "," + std::to_string(r.n_drones) + "," + num(r.objective) + "," + num(r.baseline_objective)
         + "," + num(r.savings) + "," + num(r.tspd_objective) + "," + num(r.savings_tspd) + "," + num(r.runtime);
}

std::vector<SweepResult> read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::io, "cannot read " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line != csv_header()) {
        throw Error(ErrorCode::invalid_input, path.string() + ": unexpected CSV header");
    }
    std::vector<SweepResult> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) {
            f.push_back(cell);
        }
        if (f.size() != 16) {
            // a torn final line from an interrupted run is dropped
            continue;
        }
        SweepResult r;
        r.cell.rho1 = parse_double(f[0]);
        r.cell.rho2 = parse_double(f[1]);
        r.cell.range = parse_double(f[2]);
        r.cell.sigma2 = parse_double(f[3]);
        r.cell.distribution = parse_distribution(f[4]);
        r.algorithm = parse_algorithm(f[5]);
        r.mode = parse_mode(f[6]);
        r.seed = parse_u64(f[7]);
        r.n_customers = static_cast<std::size_t>(parse_u64(f[8]));
        r.n_drones = static_cast<std::size_t>(parse_u64(f[9]));
        r.objective = parse_double(f[10]);
        r.baseline_objective = parse_double(f[11]);
        r.savings = parse_double(f[12]);
        r.tspd_objective = parse_double(f[13]);
        r.savings_tspd = parse_double(f[14]);
        r.runtime = parse_double(f[15]);
        rows.push_back(r);
    }
    return rows;
}

std::vector<SweepResult> sweep(const SweepConfig& config, const std::filesystem::path* csv)
{
    const auto cells = config.cells();
    if (cells.empty() || config.reps == 0) {
        throw Error(ErrorCode::invalid_input, "sweep grid is empty");
    }

    std::vector<SweepResult> done;
    std::set<std::string> present;
    if (csv && std::filesystem::exists(*csv)) {
        done = read_csv(*csv);
        for (const auto& r : done) {
            present.insert(key_of(r));
        }
    }

    struct Job {
        SweepCell cell;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (const auto& cell : cells) {
        for (std::size_t rep = 0; rep < config.reps; ++rep) {
            SweepResult probe;
            probe.cell = cell;
            probe.algorithm = config.algorithm;
            probe.mode = config.mode;
            probe.seed = config.base_seed + rep;
            probe.n_customers = config.n_customers;
            if (!present.count(key_of(probe))) {
                jobs.push_back(Job{cell, probe.seed});
            }
        }
    }

    std::mutex mu;
    std::ofstream append;
    if (csv) {
        if (done.empty()) {
            write_all(*csv, {});
        } else {
            // drop any torn tail before appending
            write_all(*csv, done);
        }
        append.open(*csv, std::ios::app);
        if (!append) {
            throw Error(ErrorCode::io, "cannot append to " + csv->string());
        }
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    auto worker = [&] {
        for (;;) {
            const std::size_t j = next.fetch_add(1);
            if (j >= jobs.size()) {
                return;
            }
            try {
                SweepResult r = run_cell(config, jobs[j].cell, jobs[j].seed);
                std::lock_guard lock(mu);
                done.push_back(r);
                if (csv) {
                    append << csv_row(r) << '\n' << std::flush;
                }
            } catch (const std::exception& e) {
                std::lock_guard lock(mu);
                if (!failure) {
                    const auto& c = jobs[j].cell;
                    failure = std::make_exception_ptr(Error(
                        ErrorCode::io, "cell rho1=" + num(c.rho1) + " rho2=" + num(c.rho2) + " L=" + num(c.range)
                                           + " seed=" + std::to_string(jobs[j].seed) + ": " + e.what()));
                }
                next = jobs.size();
            }
        }
    };
    const std::size_t n_threads = std::clamp<std::size_t>(config.threads, 1, std::max<std::size_t>(jobs.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    if (append.is_open()) {
        append.close();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    sort_rows(done);
    if (csv) {
        write_all(*csv, done);
    }
    return done;
}

namespace {

std::vector<double> number_list(const toml::table& t, const char* key, std::vector<double> fallback)
{
    const auto* node = t.get(key);
    if (!node) {
        return fallback;
    }
    if (auto v = node->value<double>()) {
        return {*v};
    }
    const auto* arr = node->as_array();
    if (!arr) {
        throw Error(ErrorCode::invalid_input, std::string("sweep config: '") + key + "' must be a number or a list");
    }
    std::vector<double> out;
    for (const auto& e : *arr) {
        auto v = e.value<double>();
        if (!v) {
            throw Error(ErrorCode::invalid_input, std::string("sweep config: '") + key + "' holds a non-number");
        }
        out.push_back(*v);
    }
    return out;
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& toml_text)
{
    toml::table t;
    try {
        t = toml::parse(toml_text);
    } catch (const toml::parse_error& e) {
        throw Error(ErrorCode::invalid_input, std::string("sweep config: ") + std::string(e.description()));
    }
    SweepConfig c;
    c.n_customers = static_cast<std::size_t>(t["n_customers"].value_or<std::int64_t>(60));
    c.rho1 = number_list(t, "rho1", c.rho1);
    c.rho2 = number_list(t, "rho2", c.rho2);
    c.range = number_list(t, "L", number_list(t, "range", c.range));
    c.sigma2 = number_list(t, "sigma2", c.sigma2);
    if (const auto* node = t.get("distribution")) {
        c.distributions.clear();
        if (auto s = node->value<std::string>()) {
            c.distributions.push_back(parse_distribution(*s));
        } else if (const auto* arr = node->as_array()) {
            for (const auto& e : *arr) {
                c.distributions.push_back(parse_distribution(e.value_or<std::string>("")));
            }
        }
    }
    if (auto a = t["algorithm"].value<std::string>()) {
        c.algorithm = parse_algorithm(*a);
    } else if (auto n = t["algorithm"].value<std::int64_t>()) {
        c.algorithm = parse_algorithm(std::to_string(*n));
    }
    if (auto m = t["mode"].value<std::string>()) {
        c.mode = parse_mode(*m);
    }
    c.reps = static_cast<std::size_t>(t["reps"].value_or<std::int64_t>(1));
    c.base_seed = static_cast<std::uint64_t>(t["seed"].value_or<std::int64_t>(1));
    c.threads = static_cast<std::size_t>(t["threads"].value_or<std::int64_t>(1));
    if (c.n_customers == 0 || c.reps == 0) {
        throw Error(ErrorCode::invalid_input, "sweep config: n_customers and reps must be positive");
    }
    for (double r : c.rho1) {
        if (!(r > 0.0)) {
            throw Error(ErrorCode::invalid_input, "sweep config: rho1 must be positive");
        }
    }
    for (double r : c.rho2) {
        if (!(r > 0.0)) {
            throw Error(ErrorCode::invalid_input, "sweep config: rho2 must be positive");
        }
    }
    return c;
}

SweepConfig load_sweep_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::io, "cannot read " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_sweep_config(ss.str());
}

}  // namespace tspsd
