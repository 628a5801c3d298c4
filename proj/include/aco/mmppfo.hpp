#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "aco/adapter.hpp"
#include "aco/config.hpp"

namespace aco::mmppfo {

class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class MoveKind { stay, pull_in, push_out, offload, pull_in_offload, push_out_offload };

const char* to_string(MoveKind kind);
MoveKind move_kind_from_string(const std::string& text);

inline bool is_pull_in(MoveKind k) { return k == MoveKind::pull_in || k == MoveKind::pull_in_offload; }
inline bool is_push_out(MoveKind k) { return k == MoveKind::push_out || k == MoveKind::push_out_offload; }

struct AllowedMove {
    int week = 0;
    int fab = 0;
    MoveKind kind = MoveKind::stay;
};

/// Indivisible batch of wafers of one product, producible in one
/// (week, fab) slot and able to support at most one order.
struct WaferLot {
    int id = 0;
    int quantity = 1;
    int product_group = 0;
    int week = 0;  // original commit week
    int fab = 0;   // original fab
    std::vector<AllowedMove> allowed_moves;
};

struct Order {
    int id = 0;
    int demand = 1;
    int week = 0;  // commit week the demand is due
    int product_group = 0;
};

/// Wafers of one product group a fab can produce in one week.
struct CapacityCell {
    int product_group = 0;
    int fab = 0;
    int week = 0;
    int capacity = 0;
};

struct MmppfoInstance {
    std::vector<WaferLot> wafer_lots;
    std::vector<Order> orders;
    std::vector<CapacityCell> capacities;

    void validate() const;
    /// Index into capacities, or -1 when no cell is defined for the slot.
    int cell_index(int product_group, int fab, int week) const;
};

/// One wafer-lot allocation: the lot placed at (week, fab) through one of
/// its permitted moves, optionally supporting an order (order = -1 keeps the
/// lot unassigned in its original slot).
struct ScheduleEdge {
    int lot = 0;
    int order = -1;
    int week = 0;
    int fab = 0;
    MoveKind kind = MoveKind::stay;

    bool operator==(const ScheduleEdge&) const = default;
};

/// Every edge surviving the static search-space filters: move permission
/// lists, order-support timing (lot week <= order week), product-group
/// match, and existence of a capacity cell at the target slot. Capacity
/// levels and push-out pairing are combinatorial and checked during
/// construction instead.
struct SearchSpace {
    std::vector<ScheduleEdge> edges;
    std::vector<std::vector<std::size_t>> support_edges_of_order;  // [order]
    std::vector<std::size_t> stay_edge_of_lot;                     // [lot] the order-less edge
    std::vector<int> target_cell_of_edge;                          // [edge], -1 = none
    std::vector<int> original_cell_of_lot;                         // [lot], -1 = none
    std::vector<int> order_sequence;  // order ids ascending (week, id)
};

SearchSpace build_search_space(const MmppfoInstance& instance);

/// The edge-list view of a (possibly partial) schedule. Only explicitly
/// listed edges count; solver output always lists every lot.
using Assignment = std::vector<ScheduleEdge>;

int supported_request(const MmppfoInstance&, const Assignment&, int order_id);
int undersupported_request(const MmppfoInstance&, const Assignment&, int order_id);
int oversupported_request(const MmppfoInstance&, const Assignment&, int order_id);
int capacity_utilization(const MmppfoInstance&, const Assignment&, const CapacityCell& cell);
int capacity_waste(const MmppfoInstance&, const Assignment&, const CapacityCell& cell);
/// Sum of undersupported requests over all orders (the minimization target).
int mmppfo_fitness(const MmppfoInstance&, const Assignment&);
/// Demand minus supported request, unclamped (negative = oversupported).
int remaining_demand(const MmppfoInstance&, const Assignment&, int order_id);

inline constexpr double kDiFloor = 0.1;

/// max(RD - |RD - Q|, 0.1): highest for lots matching the remaining demand
/// exactly, floored so no candidate gets a vanishing probability.
double dynamic_impact_value(int remaining_demand, int lot_quantity);
double dynamic_impact_mmppfo(const MmppfoInstance&, const Assignment&, int order_id, int lot_id);

struct ScheduleCheck {
    bool feasible = true;
    std::string violation;
    int fitness = 0;
};

/// Feasibility + fitness of an explicit schedule, recomputed from scratch
/// and independent of the solver path.
ScheduleCheck check_schedule(const MmppfoInstance&, const Assignment&);

struct GeneratorParams {
    int wafer_lot_count = 300;
    int total_wafers = 6312;
    int periods = 7;
    int order_count = 24;
    int quantity_min = 1;
    int quantity_max = 25;
    int total_capacity = 6000;
    int total_demand = 5000;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Seeded synthetic instance with the exact conservation totals of the
/// parameters. Lots that do not fit the capacity horizon at their original
/// week are scheduled one week past it (no capacity cell there) and can only
/// enter the horizon through pull-in moves.
MmppfoInstance generate_dataset(const GeneratorParams& params);

double tightness(const GeneratorParams& params);

MmppfoInstance load_instance(const std::string& path);
void save_instance(const MmppfoInstance& instance, const std::string& path);
MmppfoInstance instance_from_json_text(const std::string& text);
std::string instance_to_json_text(const MmppfoInstance& instance);

/// Adapter binding the scheduling model to the engine. Orders are processed
/// in ascending (week, id) order, one pass; edges for the current order are
/// offered while its remaining demand is positive, and construction finishes
/// by putting every unassigned lot on its stay edge. Internally, unassigned
/// lots reserve capacity in their original slot so the finalized schedule
/// always satisfies the capacity constraint.
class MmppfoAdapter final : public ProblemAdapter {
public:
    explicit MmppfoAdapter(const MmppfoInstance& instance,
                           std::shared_ptr<const SearchSpace> space = nullptr);

    std::size_t edge_count() const override { return space_->edges.size(); }
    Sense sense() const override { return Sense::minimize; }
    void reset() override;
    void candidates(std::vector<CandidateView>& out) const override;
    void apply(std::size_t edge_id) override;
    bool complete() const override;
    void finalize(std::vector<std::size_t>& solution) override;
    double fitness() const override { return total_usr_; }

    const SearchSpace& space() const { return *space_; }
    int pull_ins() const { return pull_ins_; }
    int push_outs() const { return push_outs_; }
    int supported(int order_id) const { return supported_[order_id]; }

private:
    bool edge_feasible(std::size_t edge_id) const;

    const MmppfoInstance* instance_;
    std::shared_ptr<const SearchSpace> space_;
    std::vector<int> edge_of_lot_;  // -1 = unassigned
    std::vector<int> supported_;    // per order
    std::vector<int> used_;         // per cell, reservations included
    int pull_ins_ = 0;
    int push_outs_ = 0;
    double total_usr_ = 0.0;
    mutable std::size_t seq_pos_ = 0;  // one-pass cursor over order_sequence
};

}  // namespace aco::mmppfo
