#pragma once

#include <string>
#include <vector>

#include "qemtp/emtp/waveform.hpp"

namespace qemtp::app {

struct ChannelStats {
  std::string name;
  double rmse = 0.0;
  double max_abs_diff = 0.0;
  double max_abs_ref = 0.0;  ///< max |b|
};

struct CompareResult {
  /// sqrt(mean of (a - b)^2 over every sample of every shared channel).
  double rmse = 0.0;
  /// rmse divided by the largest |b| over the shared channels.
  double rmse_pu = 0.0;
  /// max over samples of ||a_t - b_t|| / ||b_t|| across the shared node
  /// voltage channels (samples with ||b_t|| = 0 are skipped).
  double max_rel_err = 0.0;
  std::vector<ChannelStats> channels;
};

/// Compares every channel present in both waveforms except rel_err. Throws
/// InvalidParameter when the time axes differ or nothing is shared.
CompareResult compare_waveforms(const emtp::Waveform& a, const emtp::Waveform& b);

}  // namespace qemtp::app
