#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "cpsim/geometry.hpp"

namespace cpsim::world {

using EntityId = std::int32_t;

constexpr double kTickSeconds = 0.1;  // 10 Hz everywhere

enum class EntityKind { car, bus, truck, bicyclist, pedestrian, static_obstacle };

const char* to_string(EntityKind k);
bool is_vehicle(EntityKind k);  // car | bus | truck
bool is_moving(EntityKind k);   // everything except static_obstacle

struct Entity {
    EntityId id = 0;
    EntityKind kind = EntityKind::car;
    Vec2 pos;
    double heading = 0.0;  // radians, 0 = +x
    double speed = 0.0;    // m/s
    double accel = 0.0;    // m/s^2
    double length = 0.0;   // footprint along heading
    double width = 0.0;
    bool connected = false;

    OrientedRect footprint() const {
        return {pos, heading, length * 0.5, width * 0.5};
    }
};

struct WorldState {
    std::int64_t tick = 0;
    std::vector<Entity> entities;  // entities[i].id == i

    const Entity& entity(EntityId id) const;  // throws lookup error on bad id
};

struct ScenarioConfig {
    std::string map_id = "map1";
    int vehicle_count = 25;
    int episode_ticks = 1600;  // 160 s at 10 Hz
    std::uint64_t rng_seed = 1;
    int static_obstacle_count = 20;
    int non_connected_count = 12;

    void validate() const;  // throws config error
};

// Built-in maps: two orthogonal multi-lane roads crossing at a stop-controlled
// intersection. "map1" is the training map, "map2" the evaluation map with
// offset geometry and a different roadside layout.
struct MapSpec {
    std::string id;
    Vec2 center;
    double lane_width = 3.5;
    int lanes_per_dir = 2;
    double stop_margin = 1.5;      // stop line distance upstream of the box
    double speed_min = 10.0;       // desired-speed range for cars
    double speed_max = 14.0;
    double spawn_front_gap = 3.0;  // first queued bumper behind the stop line
    double spawn_zone_len = 950.0;
    double sidewalk_offset = 9.0;
    double bike_offset = 7.7;
    double obstacle_offset = 11.0;
    double obstacle_start = 16.0;
    double obstacle_spacing = 22.0;
    int shelter_every = 6;         // every n-th obstacle is a bus shelter
    double patrol_start = 16.0;
    double patrol_len = 20.0;

    double box_half() const { return lane_width * lanes_per_dir; }
};

MapSpec builtin_map(const std::string& id);  // throws config error on unknown id

// One driving lane. Progress s is measured along dir; s = 0 at the
// intersection centerline, negative upstream.
struct Lane {
    Vec2 origin;  // point on the lane line at s = 0
    Vec2 dir;     // unit
    Vec2 point(double s) const { return origin + dir * s; }
    double heading() const { return std::atan2(dir.y, dir.x); }
};

struct VehicleRoute {
    int lane = 0;
    double desired_speed = 12.0;
};

struct PatrolRoute {
    Vec2 a;
    Vec2 b;
    double speed = 1.4;
    double start_s = 0.0;  // initial position along a->b
    int start_sign = 1;
};

struct Scenario {
    ScenarioConfig config;
    MapSpec map;
    std::vector<Lane> lanes;
    WorldState initial;
    std::vector<std::optional<VehicleRoute>> vehicle_routes;  // by entity id
    std::vector<std::optional<PatrolRoute>> patrol_routes;    // by entity id
};

// Deterministic function of the config (including rng_seed). Throws a
// capacity error when vehicle_count does not fit the spawn zone.
Scenario generate_scenario(const ScenarioConfig& config);

// Steps the scenario world at 10 Hz: lane following with gap keeping,
// all-way-stop queueing at the intersection, ping-pong patrol for
// pedestrians and bicyclists. Single-threaded; no shared state between
// instances.
class Simulation {
public:
    explicit Simulation(Scenario scenario);

    const WorldState& state() const { return state_; }
    const Scenario& scenario() const { return scenario_; }

    void step();

private:
    struct VehicleMotion {
        EntityId id;
        int lane;
        double s;        // progress of the vehicle center
        double v;
        double desired;
        bool queued = false;   // waiting in the stop queue
        bool served = false;   // has been granted crossing (or finished it)
    };

    struct PatrolMotion {
        EntityId id;
        double s;
        int sign;
        double seg_len;
    };

    void step_vehicles();
    void step_patrols();

    Scenario scenario_;
    WorldState state_;
    std::vector<std::vector<int>> lane_order_;  // per lane, motion indices front-to-back
    std::vector<VehicleMotion> motions_;
    std::vector<PatrolMotion> patrols_;
    std::deque<EntityId> stop_queue_;
    std::optional<EntityId> grantee_;
};

// Euclidean center-to-center neighborhood, excluding `center` itself.
// Throws a lookup error for an unknown id.
std::vector<EntityId> objects_within(const WorldState& world, EntityId center, double radius);

}  // namespace cpsim::world
