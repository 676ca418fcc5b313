#include "sphirf/partition.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace sphirf {

namespace {

// flat indices of all degrees l with order m, ascending l
std::vector<std::size_t> order_block(int band_limit, int m) {
    std::vector<std::size_t> out;
    for (int l = std::abs(m); l < band_limit; ++l)
        out.push_back(static_cast<std::size_t>(l) * l + l + m);
    return out;
}

// flat indices of degree l: l^2 .. l^2 + 2l
std::vector<std::size_t> degree_block(int l) {
    std::vector<std::size_t> out;
    for (int m = -l; m <= l; ++m) out.push_back(static_cast<std::size_t>(l) * l + l + m);
    return out;
}

void check_band_limit(int L, const char* who) {
    if (L < 1) throw std::invalid_argument(std::string(who) + ": band limit must be >= 1");
}

void append(std::vector<std::size_t>& dst, const std::vector<std::size_t>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

}  // namespace

const char* partition_choice_name(PartitionChoice choice) {
    switch (choice) {
        case PartitionChoice::Degree: return "degree";
        case PartitionChoice::DegreePaired: return "degree-paired";
        case PartitionChoice::Order: return "order";
        case PartitionChoice::OrderPaired: return "order-paired";
        case PartitionChoice::Custom: return "custom";
    }
    return "unknown";
}

Partition partition_choice1(int band_limit) {
    check_band_limit(band_limit, "partition_choice1");
    Partition p{band_limit, {}, PartitionChoice::Degree};
    for (int l = 0; l < band_limit; ++l) p.blocks.push_back(degree_block(l));
    return p;
}

Partition partition_choice2(int band_limit) {
    check_band_limit(band_limit, "partition_choice2");
    const int L = band_limit;
    Partition p{L, {}, PartitionChoice::DegreePaired};
    for (int k = 1; k <= L / 2; ++k) {
        std::vector<std::size_t> block = degree_block(k - 1);
        append(block, degree_block(L - k));
        p.blocks.push_back(std::move(block));
    }
    if (L % 2 != 0) p.blocks.push_back(degree_block((L - 1) / 2));  // self-paired middle degree
    return p;
}

Partition partition_choice3(int band_limit) {
    check_band_limit(band_limit, "partition_choice3");
    Partition p{band_limit, {}, PartitionChoice::Order};
    p.blocks.push_back(order_block(band_limit, 0));
    for (int m = 1; m < band_limit; ++m) {
        p.blocks.push_back(order_block(band_limit, m));
        p.blocks.push_back(order_block(band_limit, -m));
    }
    return p;
}

Partition partition_choice4(int band_limit) {
    check_band_limit(band_limit, "partition_choice4");
    const int L = band_limit;
    Partition p{L, {}, PartitionChoice::OrderPaired};
    p.blocks.push_back(order_block(L, 0));
    for (int m = 1; m < L; ++m) {
        std::vector<std::size_t> block = order_block(L, m);
        append(block, order_block(L, -(L - m)));
        p.blocks.push_back(std::move(block));
    }
    return p;
}

Partition make_partition(PartitionChoice choice, int band_limit) {
    switch (choice) {
        case PartitionChoice::Degree: return partition_choice1(band_limit);
        case PartitionChoice::DegreePaired: return partition_choice2(band_limit);
        case PartitionChoice::Order: return partition_choice3(band_limit);
        case PartitionChoice::OrderPaired: return partition_choice4(band_limit);
        case PartitionChoice::Custom: break;
    }
    throw std::invalid_argument("make_partition: custom partitions must be constructed explicitly");
}

std::string PartitionValidation::message() const {
    switch (kind) {
        case Kind::Valid: return "valid";
        case Kind::EmptyBlock: return "block " + std::to_string(block) + " is empty";
        case Kind::IndexOutOfRange:
            return "index " + std::to_string(index) + " in block " + std::to_string(block) +
                   " is outside {0,...,L^2-1}";
        case Kind::DuplicateIndex:
            return "index " + std::to_string(index) + " appears more than once (block " +
                   std::to_string(block) + ")";
        case Kind::MissingIndex: return "index " + std::to_string(index) + " is not covered";
    }
    return "unknown";
}

PartitionValidation validate_partition(const Partition& p) {
    using Kind = PartitionValidation::Kind;
    if (p.band_limit < 1) return {Kind::MissingIndex, 0, 0};
    const std::size_t n = static_cast<std::size_t>(p.band_limit) * p.band_limit;
    std::vector<bool> seen(n, false);
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
        if (p.blocks[b].empty()) return {Kind::EmptyBlock, b, b};
        for (std::size_t idx : p.blocks[b]) {
            if (idx >= n) return {Kind::IndexOutOfRange, idx, b};
            if (seen[idx]) return {Kind::DuplicateIndex, idx, b};
            seen[idx] = true;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!seen[i]) return {Kind::MissingIndex, i, 0};
    return {};
}

std::string partition_to_json(const Partition& p) {
    nlohmann::json j;
    j["band_limit"] = p.band_limit;
    j["choice"] = partition_choice_name(p.choice);
    j["blocks"] = p.blocks;
    return j.dump(2);
}

Partition partition_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("partition_from_json: ") + e.what());
    }
    Partition p;
    try {
        p.band_limit = j.at("band_limit").get<int>();
        p.blocks = j.at("blocks").get<std::vector<std::vector<std::size_t>>>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("partition_from_json: ") + e.what());
    }
    p.choice = PartitionChoice::Custom;
    if (j.contains("choice")) {
        const std::string name = j["choice"].get<std::string>();
        for (PartitionChoice c : {PartitionChoice::Degree, PartitionChoice::DegreePaired,
                                  PartitionChoice::Order, PartitionChoice::OrderPaired})
            if (name == partition_choice_name(c)) p.choice = c;
    }
    return p;
}

void save_partition(const Partition& p, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw std::invalid_argument("save_partition: cannot open " + path.string());
    os << partition_to_json(p) << '\n';
}

Partition load_partition(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("load_partition: cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    Partition p = partition_from_json(text);
    const PartitionValidation v = validate_partition(p);
    if (!v.ok())
        throw std::invalid_argument("load_partition: invalid partition in " + path.string() + ": " +
                                    v.message());
    return p;
}

}  // namespace sphirf
