#include "ahdacs/energy.hpp"

#include <stdexcept>

namespace ahdacs {

double tx_energy(std::uint64_t bits, double distance_m) {
  if (distance_m < 0.0) throw std::invalid_argument("tx_energy: distance must be >= 0");
  const double b = static_cast<double>(bits);
  return kElecJoulesPerBit * b + kAmpJoulesPerBitPerM2 * b * distance_m * distance_m;
}

double rx_energy(std::uint64_t bits) {
  return kElecJoulesPerBit * static_cast<double>(bits);
}

void charge(EnergyLedger& ledger, int sender, int receiver, std::uint64_t bits,
            double distance_m, int level) {
  if (sender < 0 || sender >= static_cast<int>(ledger.tx_joules.size()) || receiver < 0 ||
      receiver >= static_cast<int>(ledger.rx_joules.size()))
    throw std::invalid_argument("charge: unknown node id");
  if (level < 0 || level >= static_cast<int>(ledger.bits_per_level.size()))
    throw std::invalid_argument("charge: level out of range");

  const double tx = tx_energy(bits, distance_m);
  const double rx = rx_energy(bits);
  ledger.tx_joules[static_cast<std::size_t>(sender)] += tx;
  ledger.rx_joules[static_cast<std::size_t>(receiver)] += rx;
  ledger.total_tx += tx;
  ledger.total_rx += rx;
  ledger.bits_per_level[static_cast<std::size_t>(level)] += bits;
  ledger.total_bits += bits;
}

}  // namespace ahdacs
