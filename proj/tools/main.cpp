// Command-line workbench for dihedral field counting: Malle invariants,
// fundamental discriminant sieves, form class groups, Cohen-Lenstra
// statistics and the census bounds, all backed by a resumable record cache.
//
// Exit codes: 0 success, 1 invariant violation, 2 usage error, 3 coverage gap.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "table.hpp"

#include "dihedral/cache_store.hpp"
#include "dihedral/census.hpp"
#include "dihedral/class_group.hpp"
#include "dihedral/errors.hpp"
#include "dihedral/group_invariants.hpp"
#include "dihedral/lower_bound.hpp"
#include "dihedral/quad_arith.hpp"
#include "dihedral/sweep.hpp"
#include "dihedral/wide.hpp"

using namespace dihedral;

namespace {

struct GlobalOpts {
    std::string cache_dir;
    std::string output;
    int workers = 0;
    bool json = false;
};

using cli::Table;
using cli::fmt_double;

void emit(const Table& t, const GlobalOpts& g)
{
    if (g.output.empty()) {
        t.write(std::cout, g.json);
        return;
    }
    std::ofstream out(g.output, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::invalid_argument("cannot open output file: " + g.output);
    t.write(out, g.json);
}

std::string cache_path(const GlobalOpts& g)
{
    if (!g.cache_dir.empty())
        return g.cache_dir;
    if (const char* env = std::getenv("DIHEDRAL_CACHE"))
        return env;
    return "dihedral-cache";
}

Sign parse_sign(const std::string& s)
{
    if (s == "negative" || s == "neg")
        return Sign::negative;
    if (s == "positive" || s == "pos")
        return Sign::positive;
    if (s == "both")
        return Sign::both;
    throw std::invalid_argument("sign must be negative|positive|both");
}

struct Grid {
    std::vector<u128> xs;
};

// "start:factor:count" with a geometric progression, e.g. "1e9:10:10"
Grid parse_grid(const std::string& spec)
{
    Grid g;
    auto c1 = spec.find(':');
    auto c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw std::invalid_argument("grid must be start:factor:count");
    auto start = parse_u128(spec.substr(0, c1));
    auto factor = parse_u128(spec.substr(c1 + 1, c2 - c1 - 1));
    auto count = parse_u128(spec.substr(c2 + 1));
    if (!start || !factor || !count || *start == 0 || *factor < 2 || *count == 0 ||
        *count > 1000)
        throw std::invalid_argument("bad grid: need start >= 1, factor >= 2, 1 <= count <= 1000");
    u128 x = *start;
    for (u128 i = 0; i < *count; ++i) {
        g.xs.push_back(x);
        if (i + 1 < *count) {
            if (x > (~u128(0)) / *factor)
                throw std::invalid_argument("grid overflows 128 bits");
            x *= *factor;
        }
    }
    return g;
}

uint64_t y_rank_bound(uint32_t ell, uint32_t degree, u128 x)
{
    unsigned dexp = degree == ell ? (ell - 1) / 2 : ell;
    auto le = [&](uint64_t t) {
        auto p = checked_pow_u128(t, dexp);
        return p && *p <= x;
    };
    auto guess = uint64_t(powl((long double)x, 1.0L / dexp));
    while (guess > 0 && !le(guess))
        --guess;
    while (le(guess + 1))
        ++guess;
    return guess;
}

RankTable load_table(const GlobalOpts& g, uint64_t bound)
{
    CacheStore store(cache_path(g));
    return RankTable::load(store, bound, bound);
}

// ---- subcommand payloads -------------------------------------------------

int run_invariants(const GlobalOpts& g, uint32_t ell, uint32_t degree,
                   const std::string& gens)
{
    std::string name;
    std::optional<TransitiveGroup> grp;
    if (!gens.empty()) {
        std::vector<Permutation> ps;
        std::istringstream in(gens);
        std::string tok;
        uint32_t deg = degree;
        std::vector<std::string> toks;
        while (in >> tok)
            toks.push_back(tok);
        for (const auto& t : toks)
            deg = std::max(deg, Permutation::parse_cycles(t).degree());
        for (const auto& t : toks)
            ps.push_back(Permutation::parse_cycles(t, deg));
        if (ps.empty())
            throw std::invalid_argument("no generators given");
        grp.emplace(std::move(ps));
        name = "custom";
    } else {
        if (ell == 0 || degree == 0)
            throw std::invalid_argument("need --ell and --degree (or --gens)");
        grp.emplace(dihedral_group(ell, degree));
        name = degree == ell ? "D" + std::to_string(ell)
                             : "D" + std::to_string(ell) + "(" + std::to_string(degree) + ")";
    }
    auto part = q_class_partition(*grp);
    Rational a = malle_a(*grp);
    Table t;
    t.columns = {"group", "n", "order", "ind", "a_num", "a_den", "b_Q"};
    t.add_row({name, std::to_string(grp->degree()), std::to_string(grp->order()),
               std::to_string(part.min_index), std::to_string(a.num), std::to_string(a.den),
               std::to_string(part.b_value)});
    emit(t, g);
    return 0;
}

int run_sieve(const GlobalOpts& g, uint64_t max, const std::string& sign)
{
    Table t;
    t.columns = {"D"};
    for_each_fundamental(3, max, parse_sign(sign),
                         [&](int64_t D) { t.add_row({std::to_string(D)}); });
    emit(t, g);
    return 0;
}

int run_classgroup(const GlobalOpts& g, const std::string& disc, const std::string& sweep)
{
    if (!sweep.empty()) {
        auto dots = sweep.find("..");
        if (dots == std::string::npos)
            throw std::invalid_argument("--sweep wants LO..HI, e.g. -1000000..1000000");
        long long lo = std::stoll(sweep.substr(0, dots));
        long long hi = std::stoll(sweep.substr(dots + 2));
        if (lo > hi)
            throw std::invalid_argument("--sweep range is empty");
        CacheStore store(cache_path(g));
        SweepOptions opts;
        opts.workers = g.workers;
        if (lo < 0)
            ensure_coverage(store, Sign::negative, uint64_t(-lo), opts);
        if (hi > 0)
            ensure_coverage(store, Sign::positive, uint64_t(hi), opts);
        Table t;
        t.columns = {"sign", "records", "covered_to"};
        t.add_row({"negative", std::to_string(store.record_count(Sign::negative)),
                   std::to_string(store.contiguous_coverage_from(Sign::negative, 1))});
        t.add_row({"positive", std::to_string(store.record_count(Sign::positive)),
                   std::to_string(store.contiguous_coverage_from(Sign::positive, 1))});
        emit(t, g);
        return 0;
    }
    if (disc.empty())
        throw std::invalid_argument("need --disc or --sweep");
    int64_t D = std::stoll(disc);
    auto rec = make_record(class_group(D));
    Table t;
    t.columns = {"D", "h", "divisors", "r3", "r5", "r7"};
    std::string divs;
    for (std::size_t i = 0; i < rec.divisors.size(); ++i)
        divs += (i ? ":" : "") + std::to_string(rec.divisors[i]);
    t.add_row({std::to_string(rec.D), std::to_string(rec.h), divs,
               std::to_string(rec.ranks[0]), std::to_string(rec.ranks[1]),
               std::to_string(rec.ranks[2])});
    emit(t, g);
    return 0;
}

int run_cl_average(const GlobalOpts& g, uint32_t ell, const std::string& sign, uint64_t max)
{
    auto table = load_table(g, max);
    Table t;
    t.columns = {"ell", "sign", "max", "count", "excess_sum", "average"};
    auto one = [&](Sign s, const char* name) {
        auto avg = cohen_lenstra_average(ell, s, max, table);
        t.add_row({std::to_string(ell), name, std::to_string(max), std::to_string(avg.count),
                   std::to_string(avg.excess_sum), fmt_double(avg.average)});
    };
    Sign s = parse_sign(sign);
    if (s == Sign::both || s == Sign::negative)
        one(Sign::negative, "negative");
    if (s == Sign::both || s == Sign::positive)
        one(Sign::positive, "positive");
    emit(t, g);
    return 0;
}

int run_cl_sum_ratio(const GlobalOpts& g, uint32_t ell, const std::string& sign, uint64_t max)
{
    auto table = load_table(g, max);
    Table t;
    t.columns = {"ell", "sign", "max", "pow_sum", "ratio"};
    auto one = [&](Sign s, const char* name) {
        double ratio = cohen_lenstra_sum_ratio(ell, s, max, table);
        t.add_row({std::to_string(ell), name, std::to_string(max),
                   std::to_string(table.sum_pow(ell, s, max)), fmt_double(ratio)});
    };
    Sign s = parse_sign(sign);
    if (s == Sign::both || s == Sign::negative)
        one(Sign::negative, "negative");
    if (s == Sign::both || s == Sign::positive)
        one(Sign::positive, "positive");
    emit(t, g);
    return 0;
}

int run_census_y(const GlobalOpts& g, uint32_t ell, uint32_t degree, const std::string& grid)
{
    Grid xs = parse_grid(grid);
    uint64_t bound = y_rank_bound(ell, degree, xs.xs.back());
    auto table = load_table(g, bound);
    Table t;
    t.columns = {"kind", "ell", "degree", "x", "count_neg", "count_pos", "count",
                 "slope", "intercept", "r_squared"};
    std::vector<CensusPoint> pts;
    for (u128 x : xs.xs) {
        auto parts = count_unramified_y_parts(ell, degree, x, table);
        pts.push_back({x, parts.total(), CountKind::y_count});
        t.add_row({"y", std::to_string(ell), std::to_string(degree), to_string(x),
                   to_string(parts.negative), to_string(parts.positive),
                   to_string(parts.total()), "", "", ""});
    }
    if (pts.size() >= 3) {
        auto fit = exponent_fit(pts);
        t.add_row({"fit", std::to_string(ell), std::to_string(degree), "", "", "", "",
                   fmt_double(fit.slope), fmt_double(fit.intercept),
                   fmt_double(fit.r_squared)});
    }
    emit(t, g);
    return 0;
}

int run_upper_sum(const GlobalOpts& g, uint32_t ell, uint32_t degree, const std::string& grid)
{
    Grid xs = parse_grid(grid);
    uint64_t bound = y_rank_bound(ell, degree, xs.xs.back());
    auto table = load_table(g, bound);
    Table t;
    t.columns = {"kind", "ell", "degree", "x", "sum_neg", "sum_pos", "sum"};
    for (u128 x : xs.xs) {
        auto parts = upper_bound_sum_parts(ell, degree, x, table);
        t.add_row({"upper", std::to_string(ell), std::to_string(degree), to_string(x),
                   to_string(parts.negative), to_string(parts.positive),
                   to_string(parts.total())});
    }
    emit(t, g);
    return 0;
}

int run_series(const GlobalOpts& g, uint32_t ell, uint64_t terms)
{
    auto br = series_constant(ell, terms);
    Table t;
    t.columns = {"ell", "B", "partial", "tail_bound", "majorant", "epsilon"};
    t.add_row({std::to_string(ell), std::to_string(terms), fmt_double(br.partial),
               fmt_double(br.tail_bound), fmt_double(br.majorant), fmt_double(br.epsilon)});
    emit(t, g);
    return 0;
}

int run_fit(const GlobalOpts& g, const std::string& input)
{
    std::ifstream in(input);
    if (!in)
        throw std::invalid_argument("cannot open " + input);
    std::string header;
    if (!std::getline(in, header))
        throw std::invalid_argument("empty input");
    std::vector<std::string> cols;
    {
        std::istringstream hs(header);
        std::string c;
        while (std::getline(hs, c, ','))
            cols.push_back(c);
    }
    int xcol = -1, ccol = -1;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] == "x")
            xcol = int(i);
        if (cols[i] == "count")
            ccol = int(i);
    }
    if (xcol < 0 || ccol < 0)
        throw std::invalid_argument("input needs 'x' and 'count' columns");
    std::vector<CensusPoint> pts;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ','))
            cells.push_back(c);
        if (int(cells.size()) <= std::max(xcol, ccol))
            continue;
        auto x = parse_u128(cells[std::size_t(xcol)]);
        auto n = parse_u128(cells[std::size_t(ccol)]);
        if (!x || !n)
            continue; // fit rows and blanks
        pts.push_back({*x, *n, CountKind::y_count});
    }
    auto fit = exponent_fit(pts);
    Table t;
    t.columns = {"slope", "intercept", "r_squared", "x_min", "x_max", "points"};
    t.add_row({fmt_double(fit.slope), fmt_double(fit.intercept), fmt_double(fit.r_squared),
               fmt_double(fit.x_min), fmt_double(fit.x_max), std::to_string(pts.size())});
    emit(t, g);
    return 0;
}

int run_bound_check(const GlobalOpts& g, uint32_t ell, uint64_t max)
{
    auto table = load_table(g, max);
    auto rep = unconditional_bound_check(ell, max, table);
    Table t;
    t.columns = {"ell", "max", "checked", "max_ratio", "argmax_D"};
    t.add_row({std::to_string(ell), std::to_string(max), std::to_string(rep.checked),
               fmt_double(rep.max_ratio), std::to_string(rep.argmax_d)});
    emit(t, g);
    return 0;
}

int run_split_count(const GlobalOpts& g, uint32_t ell, uint64_t p, uint64_t q, uint64_t max,
                    const std::string& sign)
{
    auto pair = make_aux_pair(ell, p, q);
    auto c = count_split_quadratics(pair, max, parse_sign(sign));
    Table t;
    t.columns = {"ell", "p", "q", "max", "count_neg", "count_pos", "count"};
    t.add_row({std::to_string(ell), std::to_string(p), std::to_string(q), std::to_string(max),
               to_string(c.negative), to_string(c.positive), to_string(c.total())});
    emit(t, g);
    return 0;
}

int run_lower_bound(const GlobalOpts& g, uint32_t ell, uint64_t p, uint64_t q,
                    uint32_t degree, const std::string& grid)
{
    auto pair = make_aux_pair(ell, p, q);
    Grid xs = parse_grid(grid);
    Table t;
    t.columns = {"kind", "ell", "degree", "p", "q", "x", "count_neg", "count_pos", "count"};
    std::vector<CensusPoint> pts;
    for (u128 x : xs.xs) {
        auto parts = lower_bound_z_parts(ell, pair, degree, x);
        pts.push_back({x, parts.total(), CountKind::lower_bound});
        t.add_row({"lower", std::to_string(ell), std::to_string(degree), std::to_string(p),
                   std::to_string(q), to_string(x), to_string(parts.negative),
                   to_string(parts.positive), to_string(parts.total())});
    }
    emit(t, g);
    return 0;
}

int run_export(const GlobalOpts& g, const std::string& csv)
{
    CacheStore store(cache_path(g));
    std::ofstream out(csv, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::invalid_argument("cannot open " + csv);
    store.export_csv(out);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"dihedral field counting workbench"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--cache", g.cache_dir, "record cache directory (env DIHEDRAL_CACHE)");
    app.add_option("--output", g.output, "write the result table to a file instead of stdout");
    app.add_option("--workers", g.workers, "worker threads (0 = all cores)");
    app.add_flag("--json", g.json, "emit JSON instead of CSV");

    uint32_t ell = 0, degree = 0;
    std::string gens, sign = "both", grid, disc, sweep, input, csv;
    uint64_t max = 0, p = 0, q = 0, terms = 0;

    auto* inv = app.add_subcommand("invariants", "Malle invariants of a transitive group; columns group,n,order,ind,a_num,a_den,b_Q");
    inv->add_option("--ell", ell, "odd prime ell of the dihedral group");
    inv->add_option("--degree", degree, "degree (ell or 2*ell)");
    inv->add_option("--gens", gens, "whitespace-separated generators in cycle notation");

    auto* sv = app.add_subcommand("sieve", "fundamental discriminants up to a bound; column D");
    sv->add_option("--max", max, "bound on |D|")->required();
    sv->add_option("--sign", sign, "negative|positive|both");

    auto* cg = app.add_subcommand("classgroup", "form class group of one discriminant (columns D,h,divisors,r3,r5,r7), or a cache sweep");
    cg->add_option("--disc", disc, "fundamental discriminant (narrow class group for D > 0)");
    cg->add_option("--sweep", sweep, "LO..HI: compute and cache records for the range");

    auto* ca = app.add_subcommand("cl-average", "average of ell^r - 1; columns ell,sign,max,count,excess_sum,average");
    ca->add_option("--ell", ell, "odd prime in {3,5,7,11,13}")->required();
    ca->add_option("--sign", sign, "negative|positive|both");
    ca->add_option("--max", max, "bound on |D|")->required();

    auto* cr = app.add_subcommand("cl-sum-ratio", "(sum of ell^r) / X; columns ell,sign,max,pow_sum,ratio");
    cr->add_option("--ell", ell)->required();
    cr->add_option("--sign", sign, "negative|positive|both");
    cr->add_option("--max", max)->required();

    auto* cy = app.add_subcommand("census-y", "unramified dihedral counts Y over an x grid; columns kind,ell,degree,x,count_neg,count_pos,count,slope,intercept,r_squared");
    cy->add_option("--ell", ell)->required();
    cy->add_option("--degree", degree, "ell or 2*ell")->required();
    cy->add_option("--x-grid", grid, "start:factor:count, e.g. 1e9:10:10")->required();

    auto* us = app.add_subcommand("upper-sum", "dominating sum of the conditional upper bound; columns kind,ell,degree,x,sum_neg,sum_pos,sum");
    us->add_option("--ell", ell)->required();
    us->add_option("--degree", degree)->required();
    us->add_option("--x-grid", grid)->required();

    auto* sc = app.add_subcommand("series-c", "partial sums and tail bound of the b-series; columns ell,B,partial,tail_bound,majorant,epsilon");
    sc->add_option("--ell", ell)->required();
    sc->add_option("--terms", terms, "number of b terms (B)")->required();

    auto* bc = app.add_subcommand("bound-check",
                                  "verify ell^r <= h on every cached record; columns "
                                  "ell,max,checked,max_ratio,argmax_D");
    bc->add_option("--ell", ell)->required();
    bc->add_option("--max", max)->required();

    auto* ft = app.add_subcommand("fit", "log-log least squares on x,count points; columns slope,intercept,r_squared,x_min,x_max,points");
    ft->add_option("--input", input, "CSV with x and count columns")->required();

    auto* sp = app.add_subcommand("split-count", "quadratic fields split at two auxiliary primes; columns ell,p,q,max,count_neg,count_pos,count");
    sp->add_option("--ell", ell)->required();
    sp->add_option("--p", p)->required();
    sp->add_option("--q", q)->required();
    sp->add_option("--max", max)->required();
    sp->add_option("--sign", sign, "negative|positive|both");

    auto* lb = app.add_subcommand("lower-bound", "certified lower bound for Z over an x grid; columns kind,ell,degree,p,q,x,count_neg,count_pos,count");
    lb->add_option("--ell", ell)->required();
    lb->add_option("--p", p)->required();
    lb->add_option("--q", q)->required();
    lb->add_option("--degree", degree)->required();
    lb->add_option("--x-grid", grid)->required();

    auto* ex = app.add_subcommand("export", "dump cached records as CSV");
    ex->add_option("--csv", csv, "output file")->required();

    for (auto* sub : app.get_subcommands({}))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (inv->parsed())
            return run_invariants(g, ell, degree, gens);
        if (sv->parsed())
            return run_sieve(g, max, sign);
        if (cg->parsed())
            return run_classgroup(g, disc, sweep);
        if (ca->parsed())
            return run_cl_average(g, ell, sign, max);
        if (cr->parsed())
            return run_cl_sum_ratio(g, ell, sign, max);
        if (cy->parsed())
            return run_census_y(g, ell, degree, grid);
        if (us->parsed())
            return run_upper_sum(g, ell, degree, grid);
        if (sc->parsed())
            return run_series(g, ell, terms);
        if (bc->parsed())
            return run_bound_check(g, ell, max);
        if (ft->parsed())
            return run_fit(g, input);
        if (sp->parsed())
            return run_split_count(g, ell, p, q, max, sign);
        if (lb->parsed())
            return run_lower_bound(g, ell, p, q, degree, grid);
        if (ex->parsed())
            return run_export(g, csv);
    } catch (const CoverageError& e) {
        std::cerr << "coverage gap: " << e.what() << "\n";
        return 3;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
