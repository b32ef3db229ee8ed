#include "qemtp/app/compare.hpp"

#include <algorithm>
#include <cmath>

#include "qemtp/common.hpp"

namespace qemtp::app {

CompareResult compare_waveforms(const emtp::Waveform& a, const emtp::Waveform& b) {
  if (a.size() != b.size()) throw InvalidParameter("compare: time axes have different lengths");
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double ta = a.time()[k];
    const double tb = b.time()[k];
    if (std::abs(ta - tb) > 1e-12 * std::max({1.0, std::abs(ta), std::abs(tb)}))
      throw InvalidParameter("compare: time axes differ at sample " + std::to_string(k));
  }

  CompareResult out;
  double sum_sq = 0.0;
  std::size_t count = 0;
  double ref_max = 0.0;
  std::vector<const std::vector<double>*> va, vb;
  for (const std::string& name : a.channel_names()) {
    if (name == "rel_err" || !b.has_channel(name)) continue;
    const auto& ca = a.channel(name);
    const auto& cb = b.channel(name);
    ChannelStats s;
    s.name = name;
    double ch_sq = 0.0;
    for (std::size_t k = 0; k < ca.size(); ++k) {
      const double d = ca[k] - cb[k];
      ch_sq += d * d;
      s.max_abs_diff = std::max(s.max_abs_diff, std::abs(d));
      s.max_abs_ref = std::max(s.max_abs_ref, std::abs(cb[k]));
    }
    s.rmse = ca.empty() ? 0.0 : std::sqrt(ch_sq / double(ca.size()));
    sum_sq += ch_sq;
    count += ca.size();
    ref_max = std::max(ref_max, s.max_abs_ref);
    out.channels.push_back(s);
    if (name.rfind("v_", 0) == 0) {
      va.push_back(&ca);
      vb.push_back(&cb);
    }
  }
  if (out.channels.empty()) throw InvalidParameter("compare: the files share no channels");

  out.rmse = count ? std::sqrt(sum_sq / double(count)) : 0.0;
  out.rmse_pu = ref_max > 0.0 ? out.rmse / ref_max : 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double num = 0.0, den = 0.0;
    for (std::size_t c = 0; c < va.size(); ++c) {
      const double d = (*va[c])[k] - (*vb[c])[k];
      num += d * d;
      den += (*vb[c])[k] * (*vb[c])[k];
    }
    if (den > 0.0) out.max_rel_err = std::max(out.max_rel_err, std::sqrt(num / den));
  }
  return out;
}

}  // namespace qemtp::app
