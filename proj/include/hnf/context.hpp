#pragma once

#include <map>
#include <string>
#include <vector>

#include "hnf/number_field.hpp"

namespace hnf::scalar {

/// Integer covector J with its cached exact pairing (alpha, J).
struct ResonanceForm {
    std::vector<int> J;
    BaseNumber alpha_J; // exact, nonzero by construction
};

/// Where a form first appeared: algorithm step and originating monomial.
struct FormOrigin {
    std::string step;
    std::string monomial;
};

/// One line of the small-denominator ledger.
struct LedgerEntry {
    std::vector<int> J;
    BaseNumber alpha_J;
    double magnitude; // |(alpha, J)| in double precision
    FormOrigin origin;
};

/// Shared state for one problem: dimension, field, frequency vector, and the
/// interned registry of resonance forms encountered (which doubles as the
/// small-denominator ledger).
class Context {
  public:
    Context(int d, NumberField field, std::vector<BaseNumber> alpha);

    int d() const { return d_; }
    const NumberField& field() const { return field_; }
    const std::vector<BaseNumber>& alpha() const { return alpha_; }

    /// Exact pairing (alpha, J).
    BaseNumber pair_alpha(const std::vector<int>& J) const;

    /// Intern a form, recording a ledger line on first creation.
    /// Throws ResonantMonomial when (alpha, J) = 0.
    int intern_form(const std::vector<int>& J, const FormOrigin& origin);

    /// Lookup without creating; returns -1 when absent.
    int find_form(const std::vector<int>& J) const;

    const ResonanceForm& form(int id) const { return forms_.at(static_cast<size_t>(id)); }
    size_t form_count() const { return forms_.size(); }

    /// Ledger in creation order.
    const std::vector<LedgerEntry>& ledger() const { return ledger_; }
    /// Ledger sorted by J lexicographically (deterministic output order).
    std::vector<LedgerEntry> ledger_sorted() const;

  private:
    int d_;
    NumberField field_;
    std::vector<BaseNumber> alpha_;
    std::vector<ResonanceForm> forms_;
    std::map<std::vector<int>, int> form_ids_;
    std::vector<LedgerEntry> ledger_;
};

} // namespace hnf::scalar
