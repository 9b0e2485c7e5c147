#pragma once

#include "fried/zeta_engine.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fried {

struct ClassFileHeader {
    int schema_version = 1;
    std::string model;
    std::string length_unit = "a0"; // split generator normalized to unit length
    std::string convention;         // coefficient convention tag, may be empty
    std::string note;               // free-form disclaimer, may be empty
};

struct ClassFile {
    ClassFileHeader header;
    std::vector<ConjugacyClassRecord> records;
};

// Canonical structured-text form (fixed field order, rationals as "p/q");
// save writes exactly this, so save-then-load round trips byte-identically.
std::string canonical_text(const ClassFile &cf);

// Strict schema: exact field sets, typed values, unique ids, per-record
// invariants. Throws ParseError (with the offending field), a
// SchemaVersionMismatch, or InvariantViolation; load also throws ParseError
// when the path is unreadable.
ClassFile load_classes(const std::string &path);
void save_classes(const ClassFile &cf, const std::string &path);

// Deterministic synthetic class list for a model: lengths uniform in
// [len_lo, len_hi], seeded angles, chi_orb drawn from {0, 1, 1/2, 1/3}.
ClassFile synthesize_classes(std::uint64_t seed, int count, double len_lo, double len_hi,
                             const GroupModel &g);

// Demo-quality enumeration of loxodromic conjugacy classes of the group
// generated by exact 2x2 matrices: reduced words up to max_len, trace
// deduplication, eigenvalue lambda (|lambda| > 1) converted to
// ell = 2 log|lambda| and angle = 2 arg(lambda) folded into [0, pi];
// k-th powers of a primitive class get m_mult = k (coefficient 1/k).
// Never complete beyond max_len -- the header carries a disclaimer.
// Throws NonInvertibleGenerator and Overflow (word-count cap).
ClassFile enumerate_words(const std::vector<Mat> &generators, int max_len = 12);

} // namespace fried
