#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "oculo/model.h"

namespace oculo {

/// Maximal runs of present samples, in order.
std::vector<Segment> segment(std::span<const std::uint8_t> present);
std::vector<Segment> segment(const GazeRecording& rec);

inline constexpr int kSavgolWindow = 11;
inline constexpr int kSavgolOrder = 3;

/// Least-squares weights that estimate the value at offset 0 from samples at
/// offsets -left..right with a polynomial of the given order.
std::vector<double> savgol_weights(int left, int right, int order);

/// Savitzky-Golay smoothing of one gap-free run. Samples closer than half a
/// window to either end use a shrinking asymmetric window of the same order.
/// Runs shorter than the window come back unchanged.
/// Throws InvalidWindow when window is even or not greater than order.
std::vector<double> savgol_smooth(std::span<const double> data, int window = kSavgolWindow,
                                  int order = kSavgolOrder);

/// Gaze traces smoothed segment by segment; entries outside `segments` are 0.
struct SmoothedGaze {
    std::vector<double> x_deg;
    std::vector<double> y_deg;
    std::vector<Segment> segments;
};

SmoothedGaze smooth_gaze(const GazeRecording& rec, int window = kSavgolWindow,
                         int order = kSavgolOrder);

}  // namespace oculo
