// Shared numeric types, the row-major grid container and the error hierarchy.
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bisar {

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Dense row-major 2D array. Rows are azimuth (slow time or Doppler), columns
/// are range (fast time or range frequency) everywhere in this library.
template <typename T>
class Grid2D {
public:
    Grid2D() = default;
    Grid2D(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    bool operator==(const Grid2D&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Failure categories; the CLI maps each to a distinct exit code.
enum class ErrorKind {
    Config,
    Assumption,
    NumericSupport,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

#define BISAR_DEFINE_ERROR(Name, Kind)                                      \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& what)                              \
            : Error(ErrorKind::Kind, std::string(#Name ": ") + what) {}     \
    };

BISAR_DEFINE_ERROR(ZeroVelocity, Config)
BISAR_DEFINE_ERROR(EmptyOverlap, NumericSupport)
BISAR_DEFINE_ERROR(WindowOverrun, NumericSupport)
BISAR_DEFINE_ERROR(DegenerateRange, NumericSupport)
BISAR_DEFINE_ERROR(NoStationaryPoint, NumericSupport)
BISAR_DEFINE_ERROR(InvalidScale, NumericSupport)
BISAR_DEFINE_ERROR(TandemAssumptionViolated, Assumption)
BISAR_DEFINE_ERROR(TIAssumptionViolated, Assumption)
BISAR_DEFINE_ERROR(BlockTooNarrow, Config)
BISAR_DEFINE_ERROR(RegressionIllConditioned, NumericSupport)
BISAR_DEFINE_ERROR(NoPeakFound, NumericSupport)
BISAR_DEFINE_ERROR(ConfigError, Config)
BISAR_DEFINE_ERROR(IoError, Io)

#undef BISAR_DEFINE_ERROR

}  // namespace bisar
