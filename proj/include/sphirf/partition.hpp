#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace sphirf {

enum class PartitionChoice { Degree, DegreePaired, Order, OrderPaired, Custom };

const char* partition_choice_name(PartitionChoice choice);

/// Ordered split of the flat indices {0,...,L^2-1} into disjoint blocks,
/// each spanning an orthogonal subspace of the band-limited space.
struct Partition {
    int band_limit = 0;
    std::vector<std::vector<std::size_t>> blocks;
    PartitionChoice choice = PartitionChoice::Custom;

    std::size_t block_count() const { return blocks.size(); }
};

/// Choice 1: one block per degree l = k-1; sizes 2k-1.
Partition partition_choice1(int band_limit);

/// Choice 2: degree block k paired with degree block L-k+1. Even L gives
/// L/2 blocks of size 2L; odd L adds one unpaired middle block of size L.
Partition partition_choice2(int band_limit);

/// Choice 3: one block per order m, ordered m = 0, +1, -1, +2, -2, ...;
/// sizes L - |m|.
Partition partition_choice3(int band_limit);

/// Choice 4: the m = 0 block alone, then order m joined with order -(L-m)
/// for m = 1..L-1; L blocks, each of size exactly L.
Partition partition_choice4(int band_limit);

/// Dispatch for the four named choices.
Partition make_partition(PartitionChoice choice, int band_limit);

struct PartitionValidation {
    enum class Kind { Valid, EmptyBlock, IndexOutOfRange, DuplicateIndex, MissingIndex };
    Kind kind = Kind::Valid;
    std::size_t index = 0;  // offending flat index (or block number for EmptyBlock)
    std::size_t block = 0;  // block where the violation was found

    bool ok() const { return kind == Kind::Valid; }
    std::string message() const;
};

/// Confirms the blocks are non-empty, disjoint, and cover {0,...,L^2-1};
/// reports the first violation otherwise.
PartitionValidation validate_partition(const Partition& p);

/// JSON text form: band limit, choice name, explicit block index lists.
std::string partition_to_json(const Partition& p);
Partition partition_from_json(const std::string& text);

void save_partition(const Partition& p, const std::filesystem::path& path);

/// Loads and validates; throws std::invalid_argument on malformed or
/// invalid partitions.
Partition load_partition(const std::filesystem::path& path);

}  // namespace sphirf
