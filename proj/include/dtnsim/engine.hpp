#pragma once

// Deterministic fixed-step loop. Phase order per step: movement, contact
// detection, router reactions to link events, transfer progression, TTL
// expiry, traffic creation, sampling. Warm-up runs movement only.

#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dtnsim/buffer.hpp"
#include "dtnsim/connectivity.hpp"
#include "dtnsim/map_graph.hpp"
#include "dtnsim/metrics.hpp"
#include "dtnsim/mobility.hpp"
#include "dtnsim/reports.hpp"
#include "dtnsim/routing.hpp"
#include "dtnsim/scenario.hpp"
#include "dtnsim/traffic.hpp"

namespace dtnsim {

struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunResult {
  std::string scenario_name;
  std::uint64_t seed = 0;
  std::string router;
  std::int64_t dest_buffer = 0;  // traffic destination group's buffer size
  Summary summary;
  std::vector<MetricsAccumulator::TimelineRow> timeline;
  std::map<int, std::int64_t> hops;
  std::vector<std::string> report_files;
};

class SimEngine {
 public:
  // Throws EngineError when validate() reports violations or a map fails to load.
  SimEngine(Scenario scenario, std::string base_dir);

  // Single-shot: construct a fresh engine per run.
  RunResult run(const std::string& out_dir = "");

  struct Node {
    NodeId id = -1;
    int group = -1;  // index into scenario().groups
    const MapGraph* graph = nullptr;
    MovementState move;
    Buffer buffer;
    Node(NodeId id_, int group_, const MapGraph* g, std::uint64_t seed, std::int64_t cap)
        : id(id_), group(group_), graph(g), move(seed), buffer(cap) {}
  };

  const Scenario& scenario() const { return scen_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const MetricsAccumulator& metrics() const { return metrics_; }
  const RoutingPolicy& policy() const { return *policy_; }
  const std::vector<CreationEvent>& traffic_events() const { return events_; }
  const std::vector<TransferJob>& active_transfers() const;
  const std::set<LinkKey>& live_links() const;
  double now() const { return now_; }
  NodeId group_first_id(int group_index) const { return group_start_[group_index]; }

  // Instrumentation. The step hook runs at the end of every step.
  using StepHook = std::function<void(const SimEngine&, double now)>;
  void set_step_hook(StepHook hook) { hook_ = std::move(hook); }
  // Order in which per-node phases visit nodes; results must not depend on it.
  void set_node_visit_order(std::vector<NodeId> order);
  void set_contact_trace(const std::string& csv_path);
  void set_events_csv(const std::string& csv_path) { events_csv_path_ = csv_path; }

 private:
  // Remembers that a sender->peer relay scan came up empty at these buffer
  // versions; the pair needs no rescan until either buffer changes.
  struct ScanState {
    std::uint64_t sender_version = 0;
    std::uint64_t peer_version = 0;
    bool exhausted = false;
  };

  void build_nodes();
  void build_traffic();
  NodeView view(NodeId n) const { return NodeView{n, &nodes_[n].buffer}; }

  void phase_movement(double dt);
  void phase_router_reactions(const ContactEvents& ev);
  void phase_transfers();
  void phase_expiry();
  void phase_traffic();

  void handle_completion(const TransferJob& job);
  void try_start(NodeId sender);
  void record_drops(const std::vector<DropRecord>& drops);

  Scenario scen_;
  std::string base_dir_;
  std::vector<InterfaceRuntime> ifaces_;
  std::map<std::string, InterfaceId> iface_ids_;
  std::vector<std::unique_ptr<MapGraph>> graph_pool_;
  std::vector<Node> nodes_;
  std::vector<NodeId> group_start_;
  std::unique_ptr<RoutingPolicy> policy_;
  std::unique_ptr<ContactDetector> detector_;
  std::unique_ptr<TransferManager> transfers_;
  MetricsAccumulator metrics_;
  std::vector<CreationEvent> events_;
  std::size_t next_event_ = 0;
  double now_ = 0;
  bool ran_ = false;
  std::vector<NodeId> visit_order_;
  // per node: live (peer, fastest link to that peer), ascending peer id
  std::vector<std::vector<std::pair<NodeId, LinkKey>>> node_peers_;
  std::map<std::pair<NodeId, NodeId>, ScanState> scan_cache_;
  StepHook hook_;
  std::ofstream contact_trace_;
  std::string events_csv_path_;
};

RunResult run_scenario(const Scenario& s, const std::string& base_dir,
                       const std::string& out_dir = "");

// Independent runs sharing the scenario seed; when out_dir is set, writes one
// merged summary.csv plus per-run timeline/hops files.
std::vector<RunResult> run_sweep(const Scenario& s, const std::string& axis,
                                 const std::vector<std::string>& values,
                                 const std::string& base_dir, const std::string& out_dir = "");

}  // namespace dtnsim
