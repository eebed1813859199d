#include "ionspec/basis.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ionspec {

namespace {

// Appends, in lexicographic order, all tuples of length n_sites with entries
// in [0, per_site_max] summing exactly to `total`.
void enumerate_sector(int n_sites, int per_site_max, int total,
                      std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(prefix.size()) == n_sites) {
        if (total == 0) out.push_back(prefix);
        return;
    }
    const int remaining_sites = n_sites - static_cast<int>(prefix.size()) - 1;
    for (int n = 0; n <= std::min(per_site_max, total); ++n) {
        // Skip branches that cannot absorb the remaining excitations.
        if (total - n > remaining_sites * per_site_max) continue;
        prefix.push_back(n);
        enumerate_sector(n_sites, per_site_max, total - n, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

StateBasis StateBasis::phonon(int n_sites, int excitation_cap, int dim_cap) {
    if (n_sites < 1) throw std::invalid_argument("StateBasis: n_sites must be >= 1");
    if (excitation_cap < 0) throw std::invalid_argument("StateBasis: excitation_cap must be >= 0");

    StateBasis b;
    b.kind_ = BasisKind::Phonon;
    b.n_sites_ = n_sites;
    b.excitation_cap_ = excitation_cap;
    std::vector<int> prefix;
    for (int total = 0; total <= excitation_cap; ++total) {
        enumerate_sector(n_sites, excitation_cap, total, prefix, b.states_);
        if (static_cast<int>(b.states_.size()) > dim_cap) {
            std::ostringstream msg;
            msg << "StateBasis: dimension exceeds cap " << dim_cap << " (n_sites=" << n_sites
                << ", excitation_cap=" << excitation_cap << ")";
            throw std::length_error(msg.str());
        }
    }
    for (int i = 0; i < static_cast<int>(b.states_.size()); ++i) b.index_[b.states_[static_cast<std::size_t>(i)]] = i;
    return b;
}

StateBasis StateBasis::spin(int n_sites, int dim_cap) {
    if (n_sites < 1) throw std::invalid_argument("StateBasis: n_sites must be >= 1");
    if (n_sites > 20 || (1 << n_sites) > dim_cap) {
        std::ostringstream msg;
        msg << "StateBasis: spin dimension 2^" << n_sites << " exceeds cap " << dim_cap;
        throw std::length_error(msg.str());
    }

    StateBasis b;
    b.kind_ = BasisKind::Spin;
    b.n_sites_ = n_sites;
    b.excitation_cap_ = n_sites;
    std::vector<int> prefix;
    for (int total = 0; total <= n_sites; ++total) {
        enumerate_sector(n_sites, 1, total, prefix, b.states_);
    }
    for (int i = 0; i < static_cast<int>(b.states_.size()); ++i) b.index_[b.states_[static_cast<std::size_t>(i)]] = i;
    return b;
}

int StateBasis::total_excitation(int index) const {
    const auto& s = states_[static_cast<std::size_t>(index)];
    return std::accumulate(s.begin(), s.end(), 0);
}

int StateBasis::index_of(const std::vector<int>& occupations) const {
    auto it = index_.find(occupations);
    return it == index_.end() ? -1 : it->second;
}

std::string StateBasis::describe() const {
    std::ostringstream os;
    os << (kind_ == BasisKind::Phonon ? "phonon" : "spin") << " basis, " << n_sites_ << " sites";
    if (kind_ == BasisKind::Phonon) os << ", cap " << excitation_cap_;
    os << ", dim " << dim();
    return os.str();
}

}  // namespace ionspec
