#include "fried/lattice_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

namespace fried {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kPi = 3.14159265358979323846;
constexpr double kMatchTol = 1e-9;
constexpr long long kWordCap = 200000;

ordered_json record_to_json(const ConjugacyClassRecord &rec) {
    ordered_json j = ordered_json::object();
    j["id"] = rec.id;
    j["ell"] = rec.ell;
    j["a_part"] = rec.holonomy.a_part;
    j["t_angles"] = rec.holonomy.t_angles;
    j["chi_orb"] = rat_to_string(rec.chi_orb);
    j["m_mult"] = rec.m_mult;
    j["n_mult"] = rec.n_mult;
    return j;
}

void require_keys(const ordered_json &j, const std::vector<std::string> &keys,
                  const std::string &where) {
    for (const auto &k : keys)
        if (!j.contains(k)) throw ParseError(where + ": missing field '" + k + "'");
    for (const auto &[k, v] : j.items()) {
        bool known = false;
        for (const auto &want : keys) known = known || want == k;
        if (!known) throw ParseError(where + ": unknown field '" + k + "'");
    }
}

ConjugacyClassRecord record_from_json(const ordered_json &j, int index) {
    std::string where = "records[" + std::to_string(index) + "]";
    if (!j.is_object()) throw ParseError(where + ": not an object");
    require_keys(j, {"id", "ell", "a_part", "t_angles", "chi_orb", "m_mult", "n_mult"}, where);
    ConjugacyClassRecord rec;
    if (!j["id"].is_string()) throw ParseError(where + ": field 'id' must be a string");
    rec.id = j["id"].get<std::string>();
    if (!j["ell"].is_number()) throw ParseError(where + ": field 'ell' must be a number");
    rec.ell = j["ell"].get<double>();
    if (!j["a_part"].is_number()) throw ParseError(where + ": field 'a_part' must be a number");
    rec.holonomy.a_part = j["a_part"].get<double>();
    if (!j["t_angles"].is_array()) throw ParseError(where + ": field 't_angles' must be an array");
    for (const auto &v : j["t_angles"]) {
        if (!v.is_number()) throw ParseError(where + ": field 't_angles' must hold numbers");
        rec.holonomy.t_angles.push_back(v.get<double>());
    }
    if (!j["chi_orb"].is_string())
        throw ParseError(where + ": field 'chi_orb' must be a \"p/q\" string");
    try {
        rec.chi_orb = rat_from_string(j["chi_orb"].get<std::string>());
    } catch (const std::exception &) {
        throw ParseError(where + ": field 'chi_orb' is not a valid rational");
    }
    if (!j["m_mult"].is_number_integer())
        throw ParseError(where + ": field 'm_mult' must be an integer");
    rec.m_mult = j["m_mult"].get<long long>();
    if (!j["n_mult"].is_number_integer())
        throw ParseError(where + ": field 'n_mult' must be an integer");
    rec.n_mult = j["n_mult"].get<long long>();
    return rec;
}

// angle folded into [0, pi]: torus angles are defined up to the Weyl flip
double fold_angle(double phi) { return std::abs(std::remainder(phi, 2.0 * kPi)); }

} // namespace

std::string canonical_text(const ClassFile &cf) {
    ordered_json j = ordered_json::object();
    j["schema_version"] = cf.header.schema_version;
    j["model"] = cf.header.model;
    j["length_unit"] = cf.header.length_unit;
    j["convention"] = cf.header.convention;
    j["note"] = cf.header.note;
    j["records"] = ordered_json::array();
    for (const auto &rec : cf.records) j["records"].push_back(record_to_json(rec));
    return j.dump(2) + "\n";
}

ClassFile load_classes(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception &e) {
        throw ParseError("invalid document '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw ParseError("top level must be an object");
    require_keys(j, {"schema_version", "model", "length_unit", "convention", "note", "records"},
                 "header");
    if (!j["schema_version"].is_number_integer())
        throw ParseError("header: field 'schema_version' must be an integer");
    int version = j["schema_version"].get<int>();
    if (version != 1)
        throw SchemaVersionMismatch("schema version " + std::to_string(version) + ", expected 1");
    ClassFile cf;
    cf.header.schema_version = version;
    for (const char *field : {"model", "length_unit", "convention", "note"})
        if (!j[field].is_string())
            throw ParseError(std::string("header: field '") + field + "' must be a string");
    cf.header.model = j["model"].get<std::string>();
    cf.header.length_unit = j["length_unit"].get<std::string>();
    cf.header.convention = j["convention"].get<std::string>();
    cf.header.note = j["note"].get<std::string>();
    if (!j["records"].is_array()) throw ParseError("header: field 'records' must be an array");
    int index = 0;
    for (const auto &rj : j["records"]) {
        ConjugacyClassRecord rec = record_from_json(rj, index++);
        validate_record(rec);
        for (const auto &other : cf.records)
            if (other.id == rec.id)
                throw InvariantViolation("duplicate record id '" + rec.id + "'");
        cf.records.push_back(std::move(rec));
    }
    return cf;
}

void save_classes(const ClassFile &cf, const std::string &path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << canonical_text(cf);
}

ClassFile synthesize_classes(std::uint64_t seed, int count, double len_lo, double len_hi,
                             const GroupModel &g) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> len(len_lo, len_hi), ang(-3.1, 3.1);
    std::uniform_int_distribution<int> chi_pick(0, 3), m_pick(1, 3), n_pick(1, 2);
    const Rat chis[4] = {Rat(0), Rat(1), Rat(1, 2), Rat(1, 3)};

    ClassFile cf;
    cf.header.model = g.name;
    cf.header.convention = "synthetic";
    for (int i = 0; i < count; ++i) {
        ConjugacyClassRecord rec;
        std::ostringstream id;
        id << "synth-" << i;
        rec.id = id.str();
        rec.ell = len(rng);
        rec.holonomy.a_part = rec.ell;
        for (int a = 0; a < g.dim_t(); ++a) rec.holonomy.t_angles.push_back(ang(rng));
        rec.chi_orb = chis[chi_pick(rng)];
        rec.m_mult = m_pick(rng);
        rec.n_mult = n_pick(rng);
        validate_record(rec, g.dim_t());
        cf.records.push_back(std::move(rec));
    }
    return cf;
}

ClassFile enumerate_words(const std::vector<Mat> &generators, int max_len) {
    const int n = static_cast<int>(generators.size());
    std::vector<Mat> letters;
    for (const auto &gen : generators) {
        if (gen.rows != 2 || gen.cols != 2 || determinant(gen).is_zero())
            throw NonInvertibleGenerator("generators must be invertible 2x2 matrices");
        if (!(determinant(gen) == GQ(1)))
            throw NonInvertibleGenerator("generators must be unimodular");
        letters.push_back(gen);
    }
    for (const auto &gen : generators) letters.push_back(inverse(gen));
    auto inverse_of = [n](int i) { return i < n ? i + n : i - n; };
    auto letter_name = [n](int i) {
        return static_cast<char>((i < n ? 'a' : 'A') + (i % n));
    };

    struct Candidate {
        double ell = 0.0, angle = 0.0;
        std::string word;
    };
    std::map<std::string, Candidate> by_trace; // exact trace key -> best word
    long long emitted = 0;

    struct Frame {
        Mat prod;
        int last;
        int len;
        std::string word;
    };
    std::vector<Frame> stack;
    for (int i = 0; i < 2 * n; ++i)
        stack.push_back({letters[i], i, 1, std::string(1, letter_name(i))});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (++emitted > kWordCap) throw Overflow("word enumeration exceeded the cap");

        GQ tr = f.prod.trace();
        std::complex<double> t = tr.to_complex();
        std::complex<double> disc = std::sqrt(t * t - 4.0);
        std::complex<double> lam = (t + disc) / 2.0;
        if (std::abs(lam) < 1.0) lam = (t - disc) / 2.0;
        if (std::abs(lam) > 1.0 + kMatchTol) { // loxodromic only
            Candidate c;
            c.ell = 2.0 * std::log(std::abs(lam));
            c.angle = fold_angle(2.0 * std::arg(lam));
            c.word = f.word;
            std::string key = tr.str();
            auto it = by_trace.find(key);
            if (it == by_trace.end() ||
                c.word.size() < it->second.word.size() ||
                (c.word.size() == it->second.word.size() && c.word < it->second.word))
                by_trace[key] = c;
        }
        if (f.len < max_len)
            for (int i = 0; i < 2 * n; ++i) {
                if (i == inverse_of(f.last)) continue;
                stack.push_back(
                    {f.prod * letters[i], i, f.len + 1, f.word + letter_name(i)});
            }
    }

    std::vector<Candidate> classes;
    for (auto &[key, c] : by_trace) classes.push_back(c);
    std::sort(classes.begin(), classes.end(), [](const Candidate &x, const Candidate &y) {
        if (std::abs(x.ell - y.ell) > kMatchTol) return x.ell < y.ell;
        if (std::abs(x.angle - y.angle) > kMatchTol) return x.angle < y.angle;
        return x.word < y.word;
    });

    ClassFile cf;
    cf.header.model = "sl2c";
    cf.header.convention = "fried-primitive";
    cf.header.note = "demo enumeration; classes beyond max_len " + std::to_string(max_len) +
                     " are missing";
    for (const auto &c : classes) {
        long long power = 1;
        for (const auto &p : classes) {
            if (p.ell >= c.ell - kMatchTol) break;
            double ratio = c.ell / p.ell;
            long long k = std::llround(ratio);
            if (k >= 2 && std::abs(c.ell - static_cast<double>(k) * p.ell) <= kMatchTol * k &&
                std::abs(fold_angle(static_cast<double>(k) * p.angle) - c.angle) <= kMatchTol) {
                power = k;
                break;
            }
        }
        ConjugacyClassRecord rec;
        rec.id = c.word;
        rec.ell = c.ell;
        rec.holonomy.a_part = c.ell;
        rec.holonomy.t_angles = {c.angle};
        rec.chi_orb = 1;
        rec.m_mult = power;
        rec.n_mult = 1;
        validate_record(rec, 1);
        cf.records.push_back(std::move(rec));
    }
    return cf;
}

} // namespace fried
