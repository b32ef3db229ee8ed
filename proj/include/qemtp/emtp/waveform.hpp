#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qemtp::emtp {

/// Named channels sampled on a shared time axis.
class Waveform {
 public:
  Waveform() = default;
  explicit Waveform(std::vector<std::string> channel_names);

  const std::vector<std::string>& channel_names() const noexcept { return names_; }
  const std::vector<double>& time() const noexcept { return time_; }
  std::size_t size() const noexcept { return time_.size(); }

  /// Appends one sample; `values` holds one entry per channel.
  void append(double t, const std::vector<double>& values);

  bool has_channel(const std::string& name) const;
  const std::vector<double>& channel(const std::string& name) const;
  const std::vector<double>& channel(std::size_t index) const { return columns_.at(index); }

  /// Header `t,<channels>` then one row per sample, values as %.15e.
  void write_csv(std::ostream& out) const;
  static Waveform read_csv(std::istream& in);

 private:
  std::vector<std::string> names_;
  std::vector<double> time_;
  std::vector<std::vector<double>> columns_;
};

}  // namespace qemtp::emtp
