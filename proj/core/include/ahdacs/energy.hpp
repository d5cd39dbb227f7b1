#pragma once

#include <cstdint>
#include <vector>

namespace ahdacs {

// First-order radio model.
inline constexpr double kElecJoulesPerBit = 50e-9;
inline constexpr double kAmpJoulesPerBitPerM2 = 100e-12;

double tx_energy(std::uint64_t bits, double distance_m);
double rx_energy(std::uint64_t bits);

struct EnergyLedger {
  std::vector<double> tx_joules;  // per node id
  std::vector<double> rx_joules;
  double total_tx = 0.0;
  double total_rx = 0.0;
  std::vector<std::uint64_t> bits_per_level;  // level 0 = member->head collection
  std::uint64_t total_bits = 0;

  explicit EnergyLedger(int node_count = 0, int levels = 0)
      : tx_joules(static_cast<std::size_t>(node_count), 0.0),
        rx_joules(static_cast<std::size_t>(node_count), 0.0),
        bits_per_level(static_cast<std::size_t>(levels), 0) {}
};

// Debits the sender with tx energy and the receiver with rx energy.
void charge(EnergyLedger& ledger, int sender, int receiver, std::uint64_t bits,
            double distance_m, int level);

}  // namespace ahdacs
