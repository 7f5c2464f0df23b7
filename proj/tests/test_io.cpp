#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "ccs/io.hpp"
#include "ccs/rng.hpp"

namespace ccs {
namespace {

class IoTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("ccs_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }
    std::string path(const char* name) const { return (dir_ / name).string(); }
    std::filesystem::path dir_;
};

TEST_F(IoTest, MatrixTextRoundTripIsBitExact) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto A = ExpanderMatrix::generate(10 + seed % 5, 20 + seed % 7, 3 + seed % 3, seed);
        write_matrix(path("a.ccs"), A, /*binary=*/false);
        EXPECT_TRUE(read_matrix(path("a.ccs")) == A);
        // writing again produces identical bytes
        const std::string once = read_file_bytes(path("a.ccs"));
        write_matrix(path("b.ccs"), read_matrix(path("a.ccs")), false);
        EXPECT_EQ(once, read_file_bytes(path("b.ccs")));
    }
}

TEST_F(IoTest, MatrixBinaryRoundTripIsBitExact) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto A = ExpanderMatrix::generate(10 + seed % 5, 20 + seed % 7, 3 + seed % 3, 50 + seed);
        write_matrix(path("a.bin"), A, /*binary=*/true);
        EXPECT_TRUE(read_matrix(path("a.bin")) == A);
        const std::string once = read_file_bytes(path("a.bin"));
        write_matrix(path("b.bin"), read_matrix(path("a.bin")), true);
        EXPECT_EQ(once, read_file_bytes(path("b.bin")));
    }
}

TEST_F(IoTest, MatrixHeaderShape) {
    const auto A = ExpanderMatrix::generate(6, 8, 3, 1);
    const std::string text = matrix_to_text(A);
    EXPECT_EQ(text.rfind("ccs-matrix v1 6 8 3\n", 0), 0u);
    // 1 header + n lines
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 9);

    const std::string bin = matrix_to_binary(A);
    EXPECT_EQ(bin.size(), 12u + 8u * 3u * 4u);
    EXPECT_EQ(read_u32le(bin, 0), 6u);
    EXPECT_EQ(read_u32le(bin, 4), 8u);
    EXPECT_EQ(read_u32le(bin, 8), 3u);
}

TEST_F(IoTest, MalformedMatrixFilesThrow) {
    write_file_bytes(path("bad1"), "ccs-matrix v2 6 8 3\n");
    EXPECT_THROW(read_matrix(path("bad1")), io_error);
    write_file_bytes(path("bad2"), "ccs-matrix v1 6 8 3\n0 1 2\n");
    EXPECT_THROW(read_matrix(path("bad2")), io_error);
    write_file_bytes(path("bad3"), "\x01\x02");
    EXPECT_THROW(read_matrix(path("bad3")), io_error);
    // structural violations surface as io errors too
    write_file_bytes(path("bad4"), "ccs-matrix v1 6 2 3\n0 1 9\n0 1 2\n");
    EXPECT_THROW(read_matrix(path("bad4")), io_error);
    EXPECT_THROW(read_matrix(path("missing")), io_error);
}

TEST_F(IoTest, SignalRoundTripIsValueExact) {
    Rng rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        SparseSignal x;
        x.n = 1000;
        for (std::uint32_t i = 0; i < 12; ++i) {
            x.support.push_back(i * 80 + static_cast<std::uint32_t>(rng.below(50)));
            double v = rng.normal() * std::pow(10.0, static_cast<double>(rng.below(41)) - 20.0);
            if (v == 0.0) v = 1e-300;
            x.values.push_back(v);
        }
        write_signal(path("x.ccs"), x);
        const auto back = read_signal(path("x.ccs"));
        EXPECT_EQ(back.n, x.n);
        EXPECT_EQ(back.support, x.support);
        ASSERT_EQ(back.values.size(), x.values.size());
        for (std::size_t i = 0; i < x.values.size(); ++i)
            EXPECT_EQ(back.values[i], x.values[i]);   // 17 significant digits round-trip
    }
}

TEST_F(IoTest, SignalHeaderShape) {
    SparseSignal x;
    x.n = 100;
    x.support = {3, 50};
    x.values = {1.5, -2.25};
    const std::string text = signal_to_text(x);
    EXPECT_EQ(text.rfind("ccs-signal v1 100 2\n", 0), 0u);
}

TEST_F(IoTest, MalformedSignalFilesThrow) {
    write_file_bytes(path("bad1"), "ccs-matrix v1 10 2\n");
    EXPECT_THROW(read_signal(path("bad1")), io_error);
    write_file_bytes(path("bad2"), "ccs-signal v1 10 2\n3 1.5\n");
    EXPECT_THROW(read_signal(path("bad2")), io_error);
    write_file_bytes(path("bad3"), "ccs-signal v1 10 2\n5 1.5\n3 2.0\n");   // unsorted
    EXPECT_THROW(read_signal(path("bad3")), io_error);
    write_file_bytes(path("bad4"), "ccs-signal v1 10 1\n12 1.5\n");   // out of range
    EXPECT_THROW(read_signal(path("bad4")), io_error);
    write_file_bytes(path("bad5"), "ccs-signal v1 10 1\n3 0\n");   // zero value
    EXPECT_THROW(read_signal(path("bad5")), io_error);
}

TEST_F(IoTest, DenseVectorsTravelAsSignals) {
    const std::vector<double> y = {0.0, 1.5, 0.0, -2.75, 0.0, 1e-30};
    write_dense(path("y.ccs"), y);
    const auto back = read_dense(path("y.ccs"));
    ASSERT_EQ(back.size(), y.size());
    for (std::size_t i = 0; i < y.size(); ++i) EXPECT_EQ(back[i], y[i]);
    // stored in the signal format
    const auto as_signal = read_signal(path("y.ccs"));
    EXPECT_EQ(as_signal.n, 6u);
    EXPECT_EQ(as_signal.k(), 3u);
}

TEST_F(IoTest, FnvHashIsStable) {
    EXPECT_EQ(fnv1a64_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a64_hex("a"), fnv1a64_hex("a"));
    EXPECT_NE(fnv1a64_hex("a"), fnv1a64_hex("b"));
}

TEST_F(IoTest, FormatDoubleRoundTrips) {
    Rng rng(9);
    for (int rep = 0; rep < 1000; ++rep) {
        const double v = rng.normal() * std::pow(10.0, static_cast<double>(rng.below(61)) - 30.0);
        const std::string s = format_double(v);
        EXPECT_EQ(std::strtod(s.c_str(), nullptr), v);
    }
}

} // namespace
} // namespace ccs
