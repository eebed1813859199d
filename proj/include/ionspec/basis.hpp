#pragma once

#include <map>
#include <string>
#include <vector>

namespace ionspec {

enum class BasisKind { Phonon, Spin };

// Enumerated truncated Hilbert space. Phonon bases keep every occupation
// tuple whose total excitation number is at most excitation_cap; spin bases
// hold all 2^n bit strings. States are ordered by ascending total excitation
// number, lexicographically within each number sector, so the ground state is
// always index 0 and orderings are reproducible across platforms.
class StateBasis {
  public:
    static constexpr int kDefaultDimCap = 4096;

    static StateBasis phonon(int n_sites, int excitation_cap, int dim_cap = kDefaultDimCap);
    static StateBasis spin(int n_sites, int dim_cap = kDefaultDimCap);

    BasisKind kind() const { return kind_; }
    int n_sites() const { return n_sites_; }
    int excitation_cap() const { return excitation_cap_; }
    int dim() const { return static_cast<int>(states_.size()); }

    const std::vector<std::vector<int>>& states() const { return states_; }
    const std::vector<int>& state(int index) const { return states_[static_cast<std::size_t>(index)]; }

    // Occupation of `site` in basis state `index`.
    int occupation(int index, int site) const {
        return states_[static_cast<std::size_t>(index)][static_cast<std::size_t>(site)];
    }
    int total_excitation(int index) const;

    // Index of an occupation tuple, or -1 when it lies outside the truncated
    // space (used to drop ladder-operator targets beyond the cap).
    int index_of(const std::vector<int>& occupations) const;

    std::string describe() const;

  private:
    StateBasis() = default;

    BasisKind kind_ = BasisKind::Phonon;
    int n_sites_ = 0;
    int excitation_cap_ = 0;
    std::vector<std::vector<int>> states_;
    std::map<std::vector<int>, int> index_;
};

}  // namespace ionspec
