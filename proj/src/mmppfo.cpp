#include "aco/mmppfo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "aco/rng.hpp"
#include "json.hpp"

namespace aco::mmppfo {

const char* to_string(MoveKind kind) {
    switch (kind) {
        case MoveKind::stay: return "stay";
        case MoveKind::pull_in: return "pull_in";
        case MoveKind::push_out: return "push_out";
        case MoveKind::offload: return "offload";
        case MoveKind::pull_in_offload: return "pull_in+offload";
        case MoveKind::push_out_offload: return "push_out+offload";
    }
    return "stay";
}

MoveKind move_kind_from_string(const std::string& text) {
    if (text == "stay") return MoveKind::stay;
    if (text == "pull_in") return MoveKind::pull_in;
    if (text == "push_out") return MoveKind::push_out;
    if (text == "offload") return MoveKind::offload;
    if (text == "pull_in+offload") return MoveKind::pull_in_offload;
    if (text == "push_out+offload") return MoveKind::push_out_offload;
    throw parse_error("unknown move kind \"" + text + "\"");
}

void MmppfoInstance::validate() const {
    for (std::size_t i = 0; i < wafer_lots.size(); ++i) {
        const auto& lot = wafer_lots[i];
        if (lot.id != static_cast<int>(i)) throw parse_error("wafer-lot ids must be 0..n-1 in order");
        if (lot.quantity < 1) throw parse_error("wafer-lot quantity must be >= 1");
        const bool has_stay = std::any_of(
            lot.allowed_moves.begin(), lot.allowed_moves.end(), [&](const AllowedMove& mv) {
                return mv.kind == MoveKind::stay && mv.week == lot.week && mv.fab == lot.fab;
            });
        if (!has_stay)
            throw parse_error("wafer-lot " + std::to_string(lot.id) +
                              " is missing its original slot as a stay move");
    }
    for (std::size_t j = 0; j < orders.size(); ++j) {
        if (orders[j].id != static_cast<int>(j)) throw parse_error("order ids must be 0..n-1 in order");
        if (orders[j].demand < 1) throw parse_error("order demand must be >= 1");
    }
    for (const auto& cell : capacities)
        if (cell.capacity < 0) throw parse_error("cell capacity must be >= 0");
}

int MmppfoInstance::cell_index(int product_group, int fab, int week) const {
    for (std::size_t c = 0; c < capacities.size(); ++c) {
        const auto& cell = capacities[c];
        if (cell.product_group == product_group && cell.fab == fab && cell.week == week)
            return static_cast<int>(c);
    }
    return -1;
}

SearchSpace build_search_space(const MmppfoInstance& instance) {
    SearchSpace space;
    space.support_edges_of_order.resize(instance.orders.size());
    space.stay_edge_of_lot.resize(instance.wafer_lots.size());
    space.original_cell_of_lot.resize(instance.wafer_lots.size());

    for (const auto& lot : instance.wafer_lots) {
        space.original_cell_of_lot[lot.id] =
            instance.cell_index(lot.product_group, lot.fab, lot.week);

        // The order-less edge: the lot keeps its original slot.
        space.stay_edge_of_lot[lot.id] = space.edges.size();
        space.edges.push_back({lot.id, -1, lot.week, lot.fab, MoveKind::stay});
        space.target_cell_of_edge.push_back(space.original_cell_of_lot[lot.id]);

        for (const auto& move : lot.allowed_moves) {
            const int cell = instance.cell_index(lot.product_group, move.fab, move.week);
            if (cell < 0) continue;  // fab cannot produce this product that week
            for (const auto& order : instance.orders) {
                if (order.product_group != lot.product_group) continue;
                if (move.week > order.week) continue;  // must commit on time or earlier
                space.support_edges_of_order[order.id].push_back(space.edges.size());
                space.edges.push_back({lot.id, order.id, move.week, move.fab, move.kind});
                space.target_cell_of_edge.push_back(cell);
            }
        }
    }

    for (const auto& order : instance.orders) {
        if (space.support_edges_of_order[order.id].empty())
            std::cerr << "mmppfo: order " << order.id
                      << " has no feasible support edge and may go unsupported\n";
    }

    space.order_sequence.resize(instance.orders.size());
    std::iota(space.order_sequence.begin(), space.order_sequence.end(), 0);
    std::sort(space.order_sequence.begin(), space.order_sequence.end(), [&](int a, int b) {
        const auto& oa = instance.orders[a];
        const auto& ob = instance.orders[b];
        return oa.week != ob.week ? oa.week < ob.week : oa.id < ob.id;
    });
    return space;
}

int supported_request(const MmppfoInstance& instance, const Assignment& schedule, int order_id) {
    int sum = 0;
    for (const auto& edge : schedule)
        if (edge.order == order_id) sum += instance.wafer_lots[edge.lot].quantity;
    return sum;
}

int undersupported_request(const MmppfoInstance& instance, const Assignment& schedule, int order_id) {
    return std::max(instance.orders[order_id].demand - supported_request(instance, schedule, order_id), 0);
}

int oversupported_request(const MmppfoInstance& instance, const Assignment& schedule, int order_id) {
    return std::max(supported_request(instance, schedule, order_id) - instance.orders[order_id].demand, 0);
}

int capacity_utilization(const MmppfoInstance& instance, const Assignment& schedule,
                         const CapacityCell& cell) {
    int sum = 0;
    for (const auto& edge : schedule) {
        const auto& lot = instance.wafer_lots[edge.lot];
        if (lot.product_group == cell.product_group && edge.fab == cell.fab && edge.week == cell.week)
            sum += lot.quantity;
    }
    return sum;
}

int capacity_waste(const MmppfoInstance& instance, const Assignment& schedule,
                   const CapacityCell& cell) {
    return cell.capacity - capacity_utilization(instance, schedule, cell);
}

int mmppfo_fitness(const MmppfoInstance& instance, const Assignment& schedule) {
    int total = 0;
    for (const auto& order : instance.orders)
        total += undersupported_request(instance, schedule, order.id);
    return total;
}

int remaining_demand(const MmppfoInstance& instance, const Assignment& schedule, int order_id) {
    return instance.orders[order_id].demand - supported_request(instance, schedule, order_id);
}

double dynamic_impact_value(int remaining_demand, int lot_quantity) {
    const double rd = remaining_demand;
    return std::max(rd - std::abs(rd - static_cast<double>(lot_quantity)), kDiFloor);
}

double dynamic_impact_mmppfo(const MmppfoInstance& instance, const Assignment& schedule,
                             int order_id, int lot_id) {
    return dynamic_impact_value(remaining_demand(instance, schedule, order_id),
                                instance.wafer_lots[lot_id].quantity);
}

ScheduleCheck check_schedule(const MmppfoInstance& instance, const Assignment& schedule) {
    ScheduleCheck result;
    std::vector<char> seen(instance.wafer_lots.size(), 0);
    std::vector<int> used(instance.capacities.size(), 0);
    std::vector<int> supported(instance.orders.size(), 0);
    int pull_ins = 0, push_outs = 0;

    auto fail = [&](const std::string& why) {
        result.feasible = false;
        result.violation = why;
        return result;
    };

    for (const auto& edge : schedule) {
        if (edge.lot < 0 || edge.lot >= static_cast<int>(instance.wafer_lots.size()))
            return fail("unknown wafer-lot " + std::to_string(edge.lot));
        const auto& lot = instance.wafer_lots[edge.lot];
        if (seen[edge.lot]) return fail("wafer-lot " + std::to_string(edge.lot) + " assigned twice");
        seen[edge.lot] = 1;

        const bool permitted = std::any_of(
            lot.allowed_moves.begin(), lot.allowed_moves.end(), [&](const AllowedMove& mv) {
                return mv.week == edge.week && mv.fab == edge.fab && mv.kind == edge.kind;
            });
        if (!permitted)
            return fail("wafer-lot " + std::to_string(edge.lot) + " move to week " +
                        std::to_string(edge.week) + " fab " + std::to_string(edge.fab) +
                        " (" + to_string(edge.kind) + ") is not permitted");

        if (is_pull_in(edge.kind)) ++pull_ins;
        if (is_push_out(edge.kind)) ++push_outs;

        const int cell = instance.cell_index(lot.product_group, edge.fab, edge.week);
        if (cell >= 0) used[cell] += lot.quantity;

        if (edge.order >= 0) {
            if (edge.order >= static_cast<int>(instance.orders.size()))
                return fail("unknown order " + std::to_string(edge.order));
            const auto& order = instance.orders[edge.order];
            if (order.product_group != lot.product_group)
                return fail("wafer-lot " + std::to_string(edge.lot) + " product group does not match order " +
                            std::to_string(edge.order));
            if (edge.week > order.week)
                return fail("wafer-lot " + std::to_string(edge.lot) + " committed week " +
                            std::to_string(edge.week) + " after order " + std::to_string(edge.order) +
                            " week " + std::to_string(order.week));
            if (cell < 0)
                return fail("no capacity cell for product " + std::to_string(lot.product_group) +
                            " fab " + std::to_string(edge.fab) + " week " + std::to_string(edge.week));
            supported[edge.order] += lot.quantity;
        }
    }

    for (std::size_t c = 0; c < instance.capacities.size(); ++c) {
        const auto& cell = instance.capacities[c];
        if (used[c] > cell.capacity)
            return fail("capacity cell (product " + std::to_string(cell.product_group) + ", fab " +
                        std::to_string(cell.fab) + ", week " + std::to_string(cell.week) +
                        ") overloaded: " + std::to_string(used[c]) + " > " +
                        std::to_string(cell.capacity));
    }
    if (push_outs > pull_ins)
        return fail("push-outs (" + std::to_string(push_outs) + ") exceed pull-ins (" +
                    std::to_string(pull_ins) + ")");

    for (const auto& order : instance.orders)
        result.fitness += std::max(order.demand - supported[order.id], 0);
    return result;
}

void GeneratorParams::validate() const {
    if (wafer_lot_count < 1) throw std::invalid_argument("wafer_lot_count must be >= 1");
    if (periods < 1) throw std::invalid_argument("periods must be >= 1");
    if (order_count < 1) throw std::invalid_argument("order_count must be >= 1");
    if (quantity_min < 1) throw std::invalid_argument("quantity_min must be >= 1");
    if (quantity_max < quantity_min) throw std::invalid_argument("quantity range is empty");
    if (total_capacity < 1) throw std::invalid_argument("total_capacity must be >= 1");
    if (total_demand < order_count)
        throw std::invalid_argument("total_demand must allow every order at least one wafer");
    const long long lo = static_cast<long long>(wafer_lot_count) * quantity_min;
    const long long hi = static_cast<long long>(wafer_lot_count) * quantity_max;
    if (total_wafers < lo || total_wafers > hi)
        throw std::invalid_argument("total_wafers is not reachable with the given lot count and range");
}

double tightness(const GeneratorParams& params) {
    return static_cast<double>(params.total_demand) / static_cast<double>(params.total_capacity);
}

MmppfoInstance generate_dataset(const GeneratorParams& params) {
    params.validate();
    RngStream rng(RngStream::for_ant(params.seed, 0x67656e, 0, 0));
    MmppfoInstance inst;

    constexpr int kProducts = 2;
    constexpr int kFabs = 2;

    // Capacity cells for every (product, fab, week) triple, totals exact.
    const int cell_count = kProducts * kFabs * params.periods;
    const int base = params.total_capacity / cell_count;
    int remainder = params.total_capacity % cell_count;
    for (int week = 1; week <= params.periods; ++week)
        for (int p = 0; p < kProducts; ++p)
            for (int f = 0; f < kFabs; ++f) {
                int cap = base + (remainder > 0 ? 1 : 0);
                if (remainder > 0) --remainder;
                inst.capacities.push_back({p, f, week, cap});
            }

    // Lot quantities: uniform in range, then +-1 redistribution to hit the
    // exact total.
    std::vector<int> quantity(params.wafer_lot_count);
    long long sum = 0;
    for (auto& q : quantity) {
        q = params.quantity_min +
            static_cast<int>(rng.next_below(params.quantity_max - params.quantity_min + 1));
        sum += q;
    }
    while (sum != params.total_wafers) {
        const auto i = rng.next_below(quantity.size());
        if (sum > params.total_wafers && quantity[i] > params.quantity_min) {
            --quantity[i];
            --sum;
        } else if (sum < params.total_wafers && quantity[i] < params.quantity_max) {
            ++quantity[i];
            ++sum;
        }
    }

    // Initial placement: keep each cell's starting load at or below 3/4 of
    // its capacity; lots that cannot fit anywhere go one week past the
    // horizon and must be pulled in to produce.
    std::vector<int> initial_load(inst.capacities.size(), 0);
    const int overflow_week = params.periods + 1;
    for (int i = 0; i < params.wafer_lot_count; ++i) {
        WaferLot lot;
        lot.id = i;
        lot.quantity = quantity[i];
        lot.product_group = static_cast<int>(rng.next_below(kProducts));
        lot.fab = static_cast<int>(rng.next_below(kFabs));
        lot.week = overflow_week;
        for (int attempt = 0; attempt < params.periods; ++attempt) {
            const int week = 1 + static_cast<int>(rng.next_below(params.periods));
            const int cell = inst.cell_index(lot.product_group, lot.fab, week);
            const int budget = inst.capacities[cell].capacity * 3 / 4;
            if (initial_load[cell] + lot.quantity <= budget) {
                lot.week = week;
                initial_load[cell] += lot.quantity;
                break;
            }
        }

        lot.allowed_moves.push_back({lot.week, lot.fab, MoveKind::stay});
        const int other_fab = 1 - lot.fab;
        if (lot.week == overflow_week) {
            for (int week = 1; week <= params.periods; ++week) {
                if (rng.next_double() < 0.6)
                    lot.allowed_moves.push_back({week, lot.fab, MoveKind::pull_in});
                if (rng.next_double() < 0.3)
                    lot.allowed_moves.push_back({week, other_fab, MoveKind::pull_in_offload});
            }
        } else {
            for (int week = 1; week < lot.week; ++week) {
                if (rng.next_double() < 0.6)
                    lot.allowed_moves.push_back({week, lot.fab, MoveKind::pull_in});
                if (rng.next_double() < 0.3)
                    lot.allowed_moves.push_back({week, other_fab, MoveKind::pull_in_offload});
            }
            for (int week = lot.week + 1; week <= std::min(params.periods, lot.week + 2); ++week) {
                if (rng.next_double() < 0.5)
                    lot.allowed_moves.push_back({week, lot.fab, MoveKind::push_out});
                if (rng.next_double() < 0.25)
                    lot.allowed_moves.push_back({week, other_fab, MoveKind::push_out_offload});
            }
            if (rng.next_double() < 0.5)
                lot.allowed_moves.push_back({lot.week, other_fab, MoveKind::offload});
        }
        inst.wafer_lots.push_back(std::move(lot));
    }

    // Orders: weeks spread across the horizon, demands stick-broken to the
    // exact total.
    std::vector<double> weights(params.order_count);
    double weight_sum = 0.0;
    for (auto& w : weights) {
        w = rng.uniform(0.5, 1.5);
        weight_sum += w;
    }
    std::vector<int> demand(params.order_count, 1);
    int assigned = params.order_count;
    for (int j = 0; j < params.order_count && assigned < params.total_demand; ++j) {
        const int extra = std::min(
            params.total_demand - assigned,
            static_cast<int>(std::floor((params.total_demand - params.order_count) * weights[j] / weight_sum)));
        demand[j] += extra;
        assigned += extra;
    }
    for (int j = 0; assigned < params.total_demand; j = (j + 1) % params.order_count) {
        ++demand[j];
        ++assigned;
    }
    for (int j = 0; j < params.order_count; ++j) {
        Order order;
        order.id = j;
        order.demand = demand[j];
        order.week = 1 + (j * params.periods) / params.order_count;
        order.product_group = j % kProducts;
        inst.orders.push_back(order);
    }

    inst.validate();
    return inst;
}

namespace {

using nlohmann::json;

const json& require_key(const json& obj, const char* key, const char* where) {
    if (!obj.contains(key))
        throw parse_error(std::string("missing key \"") + key + "\" in " + where);
    return obj.at(key);
}

}  // namespace

MmppfoInstance instance_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    MmppfoInstance inst;
    try {
        for (const auto& jl : require_key(doc, "wafer_lots", "instance")) {
            WaferLot lot;
            lot.id = require_key(jl, "id", "wafer_lot").get<int>();
            lot.quantity = require_key(jl, "quantity", "wafer_lot").get<int>();
            lot.product_group = require_key(jl, "product_group", "wafer_lot").get<int>();
            lot.week = require_key(jl, "week", "wafer_lot").get<int>();
            lot.fab = require_key(jl, "fab", "wafer_lot").get<int>();
            for (const auto& jm : require_key(jl, "allowed_moves", "wafer_lot")) {
                AllowedMove mv;
                mv.week = require_key(jm, "week", "allowed_move").get<int>();
                mv.fab = require_key(jm, "fab", "allowed_move").get<int>();
                mv.kind = move_kind_from_string(require_key(jm, "kind", "allowed_move").get<std::string>());
                lot.allowed_moves.push_back(mv);
            }
            inst.wafer_lots.push_back(std::move(lot));
        }
        for (const auto& jo : require_key(doc, "orders", "instance")) {
            Order order;
            order.id = require_key(jo, "id", "order").get<int>();
            order.demand = require_key(jo, "demand", "order").get<int>();
            order.week = require_key(jo, "week", "order").get<int>();
            order.product_group = require_key(jo, "product_group", "order").get<int>();
            inst.orders.push_back(order);
        }
        for (const auto& jc : require_key(doc, "capacities", "instance")) {
            CapacityCell cell;
            cell.product_group = require_key(jc, "product_group", "capacity").get<int>();
            cell.fab = require_key(jc, "fab", "capacity").get<int>();
            cell.week = require_key(jc, "week", "capacity").get<int>();
            cell.capacity = require_key(jc, "capacity", "capacity").get<int>();
            inst.capacities.push_back(cell);
        }
    } catch (const json::exception& e) {
        throw parse_error(std::string("schema violation: ") + e.what());
    }
    inst.validate();
    return inst;
}

std::string instance_to_json_text(const MmppfoInstance& instance) {
    json doc;
    doc["wafer_lots"] = json::array();
    for (const auto& lot : instance.wafer_lots) {
        json jl;
        jl["id"] = lot.id;
        jl["quantity"] = lot.quantity;
        jl["product_group"] = lot.product_group;
        jl["week"] = lot.week;
        jl["fab"] = lot.fab;
        jl["allowed_moves"] = json::array();
        for (const auto& mv : lot.allowed_moves)
            jl["allowed_moves"].push_back({{"week", mv.week}, {"fab", mv.fab}, {"kind", to_string(mv.kind)}});
        doc["wafer_lots"].push_back(std::move(jl));
    }
    doc["orders"] = json::array();
    for (const auto& order : instance.orders)
        doc["orders"].push_back({{"id", order.id},
                                 {"demand", order.demand},
                                 {"week", order.week},
                                 {"product_group", order.product_group}});
    doc["capacities"] = json::array();
    for (const auto& cell : instance.capacities)
        doc["capacities"].push_back({{"product_group", cell.product_group},
                                     {"fab", cell.fab},
                                     {"week", cell.week},
                                     {"capacity", cell.capacity}});
    return doc.dump(2);
}

MmppfoInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return instance_from_json_text(buf.str());
}

void save_instance(const MmppfoInstance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    out << instance_to_json_text(instance) << '\n';
}

MmppfoAdapter::MmppfoAdapter(const MmppfoInstance& instance,
                             std::shared_ptr<const SearchSpace> space)
    : instance_(&instance), space_(std::move(space)) {
    instance.validate();
    if (!space_) space_ = std::make_shared<const SearchSpace>(build_search_space(instance));
    reset();
    // The starting plan (every lot in its original slot) must itself respect
    // capacities, otherwise reservations cannot guarantee feasibility.
    for (std::size_t c = 0; c < instance_->capacities.size(); ++c)
        if (used_[c] > instance_->capacities[c].capacity)
            throw std::invalid_argument(
                "initial schedule overloads capacity cell " + std::to_string(c) +
                "; the instance is not a feasible plan being altered");
}

void MmppfoAdapter::reset() {
    edge_of_lot_.assign(instance_->wafer_lots.size(), -1);
    supported_.assign(instance_->orders.size(), 0);
    used_.assign(instance_->capacities.size(), 0);
    pull_ins_ = 0;
    push_outs_ = 0;
    seq_pos_ = 0;
    total_usr_ = 0.0;
    for (const auto& order : instance_->orders) total_usr_ += order.demand;
    for (const auto& lot : instance_->wafer_lots) {
        const int cell = space_->original_cell_of_lot[lot.id];
        if (cell >= 0) used_[cell] += lot.quantity;
    }
}

bool MmppfoAdapter::edge_feasible(std::size_t edge_id) const {
    const auto& edge = space_->edges[edge_id];
    if (edge_of_lot_[edge.lot] != -1) return false;
    if (is_push_out(edge.kind) && push_outs_ + 1 > pull_ins_) return false;
    const int target = space_->target_cell_of_edge[edge_id];
    if (edge.order >= 0 && target < 0) return false;
    if (target >= 0 && target != space_->original_cell_of_lot[edge.lot]) {
        const int q = instance_->wafer_lots[edge.lot].quantity;
        if (used_[target] + q > instance_->capacities[target].capacity) return false;
    }
    return true;
}

void MmppfoAdapter::candidates(std::vector<CandidateView>& out) const {
    out.clear();
    while (seq_pos_ < space_->order_sequence.size()) {
        const int order_id = space_->order_sequence[seq_pos_];
        const int rd = instance_->orders[order_id].demand - supported_[order_id];
        if (rd > 0) {
            for (std::size_t edge_id : space_->support_edges_of_order[order_id]) {
                if (!edge_feasible(edge_id)) continue;
                const int q = instance_->wafer_lots[space_->edges[edge_id].lot].quantity;
                out.push_back({edge_id, 1.0, dynamic_impact_value(rd, q)});
            }
            if (!out.empty()) return;
        }
        ++seq_pos_;  // order satisfied or out of options; single pass
    }
}

void MmppfoAdapter::apply(std::size_t edge_id) {
    if (edge_id >= space_->edges.size()) throw contract_violation("mmppfo apply: edge id out of range");
    const auto& edge = space_->edges[edge_id];
    if (edge_of_lot_[edge.lot] != -1)
        throw contract_violation("mmppfo apply: wafer-lot already assigned");
    if (is_push_out(edge.kind) && push_outs_ + 1 > pull_ins_)
        throw contract_violation("mmppfo apply: push-out without a matching pull-in");

    const auto& lot = instance_->wafer_lots[edge.lot];
    const int target = space_->target_cell_of_edge[edge_id];
    const int original = space_->original_cell_of_lot[edge.lot];
    if (edge.order >= 0 && target < 0)
        throw contract_violation("mmppfo apply: support edge without a capacity cell");
    if (target != original) {
        if (target >= 0 && used_[target] + lot.quantity > instance_->capacities[target].capacity)
            throw contract_violation("mmppfo apply: capacity exceeded");
        if (original >= 0) used_[original] -= lot.quantity;
        if (target >= 0) used_[target] += lot.quantity;
    }
    if (is_pull_in(edge.kind)) ++pull_ins_;
    if (is_push_out(edge.kind)) ++push_outs_;
    if (edge.order >= 0) {
        const int before = supported_[edge.order];
        const int demand = instance_->orders[edge.order].demand;
        supported_[edge.order] = before + lot.quantity;
        total_usr_ -= std::max(demand - before, 0) - std::max(demand - supported_[edge.order], 0);
    }
    edge_of_lot_[edge.lot] = static_cast<int>(edge_id);
}

bool MmppfoAdapter::complete() const { return seq_pos_ >= space_->order_sequence.size(); }

void MmppfoAdapter::finalize(std::vector<std::size_t>& solution) {
    for (const auto& lot : instance_->wafer_lots) {
        if (edge_of_lot_[lot.id] != -1) continue;
        const std::size_t edge_id = space_->stay_edge_of_lot[lot.id];
        edge_of_lot_[lot.id] = static_cast<int>(edge_id);
        solution.push_back(edge_id);
    }
}

}  // namespace aco::mmppfo
