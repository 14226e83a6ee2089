#include "dihedral/cache_store.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>

#include "dihedral/wide.hpp"

namespace dihedral {

namespace {

constexpr int kFormatVersion = 1;

// CRC-64/ECMA-182
uint64_t crc64(const uint8_t* data, std::size_t n)
{
    static const auto table = [] {
        std::array<uint64_t, 256> t{};
        const uint64_t poly = 0x42F0E1EBA9EA3693ull;
        for (uint32_t i = 0; i < 256; ++i) {
            uint64_t c = uint64_t(i) << 56;
            for (int k = 0; k < 8; ++k)
                c = (c & 0x8000000000000000ull) ? (c << 1) ^ poly : c << 1;
            t[i] = c;
        }
        return t;
    }();
    uint64_t crc = 0;
    for (std::size_t i = 0; i < n; ++i)
        crc = (crc << 8) ^ table[uint8_t(crc >> 56) ^ data[i]];
    return crc;
}

void put_u32(std::string& buf, uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        buf += char(uint8_t(v >> (8 * i)));
}

void put_u64(std::string& buf, uint64_t v)
{
    for (int i = 0; i < 8; ++i)
        buf += char(uint8_t(v >> (8 * i)));
}

std::string encode_records(const std::vector<DiscriminantRecord>& records)
{
    std::string buf;
    for (const auto& r : records) {
        put_u64(buf, uint64_t(r.D));
        put_u64(buf, r.h);
        put_u32(buf, uint32_t(r.divisors.size()));
        for (uint32_t d : r.divisors)
            put_u32(buf, d);
        for (uint8_t rank : r.ranks)
            buf += char(rank);
    }
    return buf;
}

bool decode_records(const std::string& buf, std::vector<DiscriminantRecord>& out)
{
    std::size_t i = 0;
    auto get_u64 = [&](uint64_t& v) {
        if (i + 8 > buf.size())
            return false;
        v = 0;
        for (int k = 7; k >= 0; --k)
            v = (v << 8) | uint8_t(buf[i + std::size_t(k)]);
        i += 8;
        return true;
    };
    auto get_u32 = [&](uint32_t& v) {
        if (i + 4 > buf.size())
            return false;
        v = 0;
        for (int k = 3; k >= 0; --k)
            v = (v << 8) | uint8_t(buf[i + std::size_t(k)]);
        i += 4;
        return true;
    };
    while (i < buf.size()) {
        DiscriminantRecord r;
        uint64_t d_bits = 0;
        uint32_t ndiv = 0;
        if (!get_u64(d_bits) || !get_u64(r.h) || !get_u32(ndiv))
            return false;
        r.D = int64_t(d_bits);
        if (ndiv > 64)
            return false;
        r.divisors.resize(ndiv);
        for (uint32_t k = 0; k < ndiv; ++k)
            if (!get_u32(r.divisors[k]))
                return false;
        if (i + r.ranks.size() > buf.size())
            return false;
        for (auto& rank : r.ranks)
            rank = uint8_t(buf[i++]);
        out.push_back(std::move(r));
    }
    return true;
}

std::string hex64(uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
    return buf;
}

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void atomic_write(const std::filesystem::path& p, const std::string& data)
{
    auto tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(data.data(), std::streamsize(data.size()));
        if (!out)
            throw std::runtime_error("cache write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, p);
}

std::string intervals_str(const std::vector<std::pair<uint64_t, uint64_t>>& iv)
{
    std::string s;
    for (const auto& [lo, hi] : iv) {
        if (!s.empty())
            s += ',';
        s += std::to_string(lo) + "-" + std::to_string(hi);
    }
    return s;
}

bool parse_intervals(const std::string& s, std::vector<std::pair<uint64_t, uint64_t>>& out)
{
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t dash = s.find('-', i);
        if (dash == std::string::npos)
            return false;
        std::size_t comma = s.find(',', dash);
        if (comma == std::string::npos)
            comma = s.size();
        try {
            uint64_t lo = std::stoull(s.substr(i, dash - i));
            uint64_t hi = std::stoull(s.substr(dash + 1, comma - dash - 1));
            out.emplace_back(lo, hi);
        } catch (...) {
            return false;
        }
        i = comma == s.size() ? comma : comma + 1;
    }
    return true;
}

void validate_record(const DiscriminantRecord& r)
{
    u128 prod = 1;
    uint32_t prev = 1;
    for (uint32_t d : r.divisors) {
        if (d <= 1 || d % prev != 0)
            throw InvariantViolation("elementary divisors are not a divisibility chain");
        prev = d;
        prod *= d;
    }
    if (prod != r.h)
        throw InvariantViolation("divisor product does not match the class number");
    for (std::size_t i = 0; i < kRankPrimes.size(); ++i) {
        int rk = 0;
        for (uint32_t d : r.divisors)
            if (d % kRankPrimes[i] == 0)
                ++rk;
        if (rk != r.ranks[i])
            throw InvariantViolation("stored rank disagrees with the divisors");
    }
}

} // namespace

CacheStore::CacheStore(std::filesystem::path dir) : dir_(std::move(dir))
{
    std::filesystem::create_directories(dir_);
    load();
}

CacheStore::SignData& CacheStore::side(Sign sign)
{
    if (sign == Sign::both)
        throw std::invalid_argument("cache side must be a single sign");
    return sign == Sign::negative ? neg_ : pos_;
}

const CacheStore::SignData& CacheStore::side(Sign sign) const
{
    return const_cast<CacheStore*>(this)->side(sign);
}

void CacheStore::load()
{
    auto manifest = dir_ / "manifest.txt";
    if (!std::filesystem::exists(manifest))
        return;
    std::ifstream in(manifest);
    std::string line;
    std::string neg_crc, pos_crc;
    uint64_t neg_count = 0, pos_count = 0;
    std::vector<std::pair<uint64_t, uint64_t>> neg_iv, pos_iv;
    bool ok = true;
    while (std::getline(in, line)) {
        auto colon = line.find(": ");
        if (colon == std::string::npos) {
            if (!line.empty())
                ok = false;
            continue;
        }
        std::string key = line.substr(0, colon);
        std::string val = line.substr(colon + 2);
        if (key == "format") {
            if (val != std::to_string(kFormatVersion))
                ok = false;
        } else if (key == "neg.crc64") {
            neg_crc = val;
        } else if (key == "pos.crc64") {
            pos_crc = val;
        } else if (key == "neg.count") {
            neg_count = std::stoull(val);
        } else if (key == "pos.count") {
            pos_count = std::stoull(val);
        } else if (key == "neg.intervals") {
            ok = ok && parse_intervals(val, neg_iv);
        } else if (key == "pos.intervals") {
            ok = ok && parse_intervals(val, pos_iv);
        }
    }
    if (!ok)
        return; // unverifiable manifest: treat as empty, data stays on disk

    auto load_side = [&](SignData& sd, const char* file, const std::string& crc,
                         uint64_t count, std::vector<std::pair<uint64_t, uint64_t>>& iv) {
        if (iv.empty())
            return;
        std::string data = read_file(dir_ / file);
        if (hex64(crc64(reinterpret_cast<const uint8_t*>(data.data()), data.size())) != crc)
            return; // partial/corrupt segment: discard coverage
        std::vector<DiscriminantRecord> recs;
        if (!decode_records(data, recs) || recs.size() != count)
            return;
        sd.records = std::move(recs);
        sd.intervals = std::move(iv);
    };
    load_side(neg_, "records.neg.bin", neg_crc, neg_count, neg_iv);
    load_side(pos_, "records.pos.bin", pos_crc, pos_count, pos_iv);
}

void CacheStore::persist() const
{
    std::string neg_data = encode_records(neg_.records);
    std::string pos_data = encode_records(pos_.records);
    atomic_write(dir_ / "records.neg.bin", neg_data);
    atomic_write(dir_ / "records.pos.bin", pos_data);
    std::string m;
    m += "format: " + std::to_string(kFormatVersion) + "\n";
    m += "ells: 3,5,7,11,13\n";
    m += "neg.count: " + std::to_string(neg_.records.size()) + "\n";
    m += "neg.crc64: " +
         hex64(crc64(reinterpret_cast<const uint8_t*>(neg_data.data()), neg_data.size())) + "\n";
    m += "neg.intervals: " + intervals_str(neg_.intervals) + "\n";
    m += "pos.count: " + std::to_string(pos_.records.size()) + "\n";
    m += "pos.crc64: " +
         hex64(crc64(reinterpret_cast<const uint8_t*>(pos_data.data()), pos_data.size())) + "\n";
    m += "pos.intervals: " + intervals_str(pos_.intervals) + "\n";
    atomic_write(dir_ / "manifest.txt", m);
}

const std::vector<std::pair<uint64_t, uint64_t>>& CacheStore::coverage(Sign sign) const
{
    return side(sign).intervals;
}

bool CacheStore::covers(Sign sign, uint64_t lo, uint64_t hi) const
{
    if (sign == Sign::both)
        return covers(Sign::negative, lo, hi) && covers(Sign::positive, lo, hi);
    for (const auto& [a, b] : side(sign).intervals)
        if (a <= lo && hi <= b)
            return true;
    return false;
}

uint64_t CacheStore::contiguous_coverage_from(Sign sign, uint64_t lo) const
{
    for (const auto& [a, b] : side(sign).intervals)
        if (a <= lo && lo <= b)
            return b;
    return 0;
}

void CacheStore::append(Sign sign, uint64_t lo, uint64_t hi,
                        const std::vector<DiscriminantRecord>& records)
{
    if (lo < 1 || hi < lo)
        throw std::invalid_argument("append: bad interval");
    SignData& sd = side(sign);

    uint64_t prev_abs = 0;
    for (const auto& r : records) {
        if ((sign == Sign::negative) != (r.D < 0))
            throw std::invalid_argument("append: record sign mismatch");
        uint64_t a = uint64_t(r.D < 0 ? -r.D : r.D);
        if (a < lo || a > hi)
            throw std::invalid_argument("append: record outside the covered interval");
        if (a <= prev_abs)
            throw std::invalid_argument("append: records not sorted by |D|");
        prev_abs = a;
        validate_record(r);
    }

    // completeness: every fundamental |D| in [lo, hi] must have a record
    {
        auto flags = detail::fundamental_flags(lo, hi + 1, sign == Sign::negative);
        std::size_t k = 0;
        for (uint64_t N = lo; N <= hi; ++N) {
            bool have = k < records.size() &&
                        uint64_t(records[k].D < 0 ? -records[k].D : records[k].D) == N;
            if (flags[N - lo] != (have ? 1 : 0))
                throw InvariantViolation(
                    "append: records do not match the fundamental discriminants of the range");
            if (have)
                ++k;
        }
        if (k != records.size())
            throw InvariantViolation("append: surplus records");
    }

    // agreement on overlap with existing data
    auto abs_of = [](const DiscriminantRecord& r) {
        return uint64_t(r.D < 0 ? -r.D : r.D);
    };
    bool fully_covered = covers(sign, lo, hi);
    for (const auto& r : records) {
        uint64_t a = abs_of(r);
        bool covered = covers(sign, a, a);
        if (!covered)
            continue;
        auto it = std::lower_bound(sd.records.begin(), sd.records.end(), a,
                                   [&](const DiscriminantRecord& x, uint64_t v) {
                                       return abs_of(x) < v;
                                   });
        if (it == sd.records.end() || abs_of(*it) != a || !(*it == r))
            throw ConflictError("append: conflicting record for |D| = " + std::to_string(a));
    }
    if (fully_covered)
        return; // idempotent no-op

    // merge records and intervals
    std::vector<DiscriminantRecord> merged;
    merged.reserve(sd.records.size() + records.size());
    std::size_t i = 0, j = 0;
    while (i < sd.records.size() || j < records.size()) {
        if (j == records.size() ||
            (i < sd.records.size() && abs_of(sd.records[i]) < abs_of(records[j]))) {
            merged.push_back(sd.records[i++]);
        } else if (i == sd.records.size() || abs_of(records[j]) < abs_of(sd.records[i])) {
            merged.push_back(records[j++]);
        } else {
            merged.push_back(sd.records[i++]); // equal |D|, content already verified equal
            ++j;
        }
    }
    sd.records = std::move(merged);

    auto iv = sd.intervals;
    iv.emplace_back(lo, hi);
    std::sort(iv.begin(), iv.end());
    std::vector<std::pair<uint64_t, uint64_t>> out;
    for (auto [a, b] : iv) {
        if (!out.empty() && a <= out.back().second + 1)
            out.back().second = std::max(out.back().second, b);
        else
            out.emplace_back(a, b);
    }
    sd.intervals = std::move(out);
    persist();
}

std::vector<DiscriminantRecord> CacheStore::query(Sign sign, uint64_t lo, uint64_t hi) const
{
    if (hi < lo)
        throw std::invalid_argument("query: bad interval");
    const SignData& sd = side(sign);
    // find the first uncovered point in [lo, hi]
    uint64_t probe = lo;
    for (const auto& [a, b] : sd.intervals) {
        if (b < probe)
            continue;
        if (a > probe)
            break;
        probe = b + 1;
        if (probe > hi)
            break;
    }
    if (probe <= hi) {
        uint64_t gap_hi = hi;
        for (const auto& [a, b] : sd.intervals)
            if (a > probe) {
                gap_hi = std::min(gap_hi, a - 1);
                break;
            }
        throw CoverageError("cache coverage gap for |D| in [" + std::to_string(probe) + ", " +
                                std::to_string(gap_hi) + "]",
                            probe, gap_hi);
    }
    auto abs_of = [](const DiscriminantRecord& r) {
        return uint64_t(r.D < 0 ? -r.D : r.D);
    };
    auto first = std::lower_bound(sd.records.begin(), sd.records.end(), lo,
                                  [&](const DiscriminantRecord& x, uint64_t v) {
                                      return abs_of(x) < v;
                                  });
    auto last = std::upper_bound(sd.records.begin(), sd.records.end(), hi,
                                 [&](uint64_t v, const DiscriminantRecord& x) {
                                     return v < abs_of(x);
                                 });
    return {first, last};
}

std::size_t CacheStore::record_count(Sign sign) const
{
    return side(sign).records.size();
}

void CacheStore::export_csv(std::ostream& out) const
{
    out << "D,h,divisors,r3,r5,r7,r11,r13\n";
    auto abs_of = [](const DiscriminantRecord& r) {
        return uint64_t(r.D < 0 ? -r.D : r.D);
    };
    std::size_t i = 0, j = 0;
    auto emit = [&](const DiscriminantRecord& r) {
        out << r.D << ',' << r.h << ',';
        for (std::size_t k = 0; k < r.divisors.size(); ++k)
            out << (k ? ":" : "") << r.divisors[k];
        for (auto rank : r.ranks)
            out << ',' << int(rank);
        out << '\n';
    };
    while (i < neg_.records.size() || j < pos_.records.size()) {
        if (j == pos_.records.size() ||
            (i < neg_.records.size() && abs_of(neg_.records[i]) <= abs_of(pos_.records[j])))
            emit(neg_.records[i++]);
        else
            emit(pos_.records[j++]);
    }
}

} // namespace dihedral
