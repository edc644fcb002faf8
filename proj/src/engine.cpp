#include "dtnsim/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cmath>
#include <filesystem>

namespace dtnsim {

SimEngine::SimEngine(Scenario scenario, std::string base_dir)
    : scen_(std::move(scenario)), base_dir_(std::move(base_dir)) {
  const auto violations = validate(scen_, base_dir_);
  if (!violations.empty()) {
    std::string msg = "scenario is not runnable:";
    for (const auto& v : violations) msg += "\n  " + v.where + ": " + v.message;
    throw EngineError(msg);
  }

  for (const auto& [name, spec] : scen_.interfaces) {
    iface_ids_[name] = static_cast<InterfaceId>(ifaces_.size());
    ifaces_.push_back(InterfaceRuntime{name, spec.transmit_speed, spec.transmit_range});
  }

  build_nodes();
  policy_ = make_policy(scen_.router);

  std::vector<std::vector<bool>> has_iface(ifaces_.size(),
                                           std::vector<bool>(nodes_.size(), false));
  for (const auto& node : nodes_)
    for (const auto& iface : scen_.groups[node.group].interfaces)
      has_iface[iface_ids_.at(iface)][node.id] = true;
  detector_ = std::make_unique<ContactDetector>(ifaces_, has_iface);
  transfers_ = std::make_unique<TransferManager>(ifaces_, static_cast<int>(nodes_.size()));

  build_traffic();

  visit_order_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) visit_order_[i] = static_cast<NodeId>(i);
  node_peers_.resize(nodes_.size());
}

void SimEngine::build_nodes() {
  // one parse per distinct file, one union graph per distinct okMaps list
  std::map<std::string, const MapGraph*> file_graphs;
  std::map<std::vector<std::string>, const MapGraph*> union_graphs;
  for (const auto& g : scen_.groups) {
    for (const auto& m : g.ok_maps) {
      if (file_graphs.count(m)) continue;
      try {
        graph_pool_.push_back(std::make_unique<MapGraph>(load_wkt_file(resolve_map_path(base_dir_, m))));
      } catch (const WktError& e) {
        throw EngineError(e.what());
      }
      file_graphs[m] = graph_pool_.back().get();
    }
    if (!union_graphs.count(g.ok_maps)) {
      if (g.ok_maps.size() == 1) {
        union_graphs[g.ok_maps] = file_graphs.at(g.ok_maps[0]);
      } else {
        std::vector<const MapGraph*> parts;
        for (const auto& m : g.ok_maps) parts.push_back(file_graphs.at(m));
        graph_pool_.push_back(std::make_unique<MapGraph>(merge_graphs(parts)));
        union_graphs[g.ok_maps] = graph_pool_.back().get();
      }
    }
  }

  // ids laid out in group declaration order
  NodeId next = 0;
  for (std::size_t gi = 0; gi < scen_.groups.size(); ++gi) {
    const auto& g = scen_.groups[gi];
    group_start_.push_back(next);
    const MapGraph* graph = union_graphs.at(g.ok_maps);
    for (int k = 0; k < g.count; ++k) {
      nodes_.emplace_back(next, static_cast<int>(gi), graph,
                          derive_seed(scen_.seed, "mobility", static_cast<std::uint64_t>(next)),
                          g.buffer_size);
      init_placement(nodes_.back().move, *graph);
      ++next;
    }
  }
}

void SimEngine::build_traffic() {
  if (!scen_.traffic.enabled()) return;
  TrafficHosts hosts;
  for (const auto& src : scen_.traffic.source_groups) {
    for (std::size_t gi = 0; gi < scen_.groups.size(); ++gi) {
      if (scen_.groups[gi].name != src) continue;
      for (int k = 0; k < scen_.groups[gi].count; ++k)
        hosts.sources.push_back(group_start_[gi] + k);
    }
  }
  for (std::size_t gi = 0; gi < scen_.groups.size(); ++gi) {
    if (scen_.groups[gi].name != scen_.traffic.dest_group) continue;
    for (int k = 0; k < scen_.groups[gi].count; ++k)
      hosts.destinations.push_back(group_start_[gi] + k);
  }
  events_ = schedule_events(scen_.traffic, hosts, scen_.seed, scen_.end_time);
}

void SimEngine::set_node_visit_order(std::vector<NodeId> order) {
  assert(order.size() == nodes_.size());
  visit_order_ = std::move(order);
}

void SimEngine::set_contact_trace(const std::string& csv_path) {
  contact_trace_.open(csv_path, std::ios::binary);
  if (!contact_trace_) throw EngineError("cannot write contact trace '" + csv_path + "'");
  contact_trace_ << "time,event,node_a,node_b,interface\n";
}

const std::set<LinkKey>& SimEngine::live_links() const { return detector_->live(); }

const std::vector<TransferJob>& SimEngine::active_transfers() const { return transfers_->active(); }

void SimEngine::phase_movement(double dt) {
  for (NodeId n : visit_order_) {
    auto& node = nodes_[n];
    const auto& g = scen_.groups[node.group];
    advance(node.move, *node.graph, g.speed_min, g.speed_max, dt);
  }
}

void SimEngine::phase_router_reactions(const ContactEvents& ev) {
  if (ev.down.empty() && ev.up.empty()) return;
  std::set<NodeId> touched;
  for (const LinkKey& link : ev.down) {
    touched.insert(link.a);
    touched.insert(link.b);
    if (contact_trace_)
      contact_trace_ << format_fixed(now_) << ",down," << link.a << "," << link.b << ","
                     << ifaces_[link.iface].name << "\n";
  }
  for (const LinkKey& link : ev.up) {
    touched.insert(link.a);
    touched.insert(link.b);
    if (contact_trace_)
      contact_trace_ << format_fixed(now_) << ",up," << link.a << "," << link.b << ","
                     << ifaces_[link.iface].name << "\n";
  }
  // rebuild the send-priority peer list (ascending peer, fastest link per peer)
  for (NodeId n : touched) {
    auto& peers = node_peers_[n];
    peers.clear();
    for (const LinkKey& link : detector_->live()) {
      if (link.a != n && link.b != n) continue;
      const NodeId peer = (link.a == n) ? link.b : link.a;
      auto it = std::find_if(peers.begin(), peers.end(),
                             [&](const auto& p) { return p.first == peer; });
      if (it == peers.end()) {
        peers.emplace_back(peer, link);
      } else if (ifaces_[link.iface].speed_bps > ifaces_[it->second.iface].speed_bps) {
        it->second = link;
      }
    }
    std::sort(peers.begin(), peers.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
  }
}

void SimEngine::record_drops(const std::vector<DropRecord>& drops) {
  for (const auto& d : drops) {
    metrics_.on_dropped(d);
    metrics_.on_copy_removed(d.msg->id);
  }
}

void SimEngine::handle_completion(const TransferJob& job) {
  auto& sender = nodes_[job.sender];
  auto& receiver = nodes_[job.receiver];
  Copy* held = sender.buffer.find(job.msg_id);
  assert(held && held->in_flight);
  held->in_flight = false;
  metrics_.on_relayed();
  const MessagePtr msg = held->msg;

  if (job.receiver == msg->destination) {
    // latency/hopcount sampled on the first arrival only
    metrics_.on_delivered(msg->id, now_, now_ - msg->created_at,
                          static_cast<int>(held->hop_path.size()));
    sender.buffer.remove_on_delivery(msg->id);
    metrics_.on_copy_removed(msg->id);
    return;
  }
  if (receiver.buffer.contains(msg->id)) return;  // raced with another incoming copy

  Copy copy;
  copy.msg = msg;
  copy.received_at = now_;
  copy.hop_path = held->hop_path;
  copy.hop_path.push_back(job.receiver);
  copy.copies_remaining = policy_->receiver_quota(held->copies_remaining);
  auto res = receiver.buffer.insert(std::move(copy), now_);
  if (res.outcome != InsertOutcome::accepted) return;  // discarded; sender keeps its quota
  metrics_.on_copy_added(msg->id);
  record_drops(res.dropped);
  held->copies_remaining = policy_->sender_quota_after_relay(held->copies_remaining);
}

// The send decision is recomputed from live buffer state whenever the
// outgoing slot is free: deliveries to any peer first, then the
// oldest-received copy some peer lacks. A contact therefore keeps
// transferring for as long as the summary vectors differ, including
// messages the peer received and dropped again.
void SimEngine::try_start(NodeId sender) {
  if (transfers_->sender_busy(sender)) return;
  const Buffer& buf = nodes_[sender].buffer;
  if (buf.copy_count() == 0 || node_peers_[sender].empty()) return;

  const auto begin_job = [&](const LinkKey& link, const Copy& copy) {
    auto job = transfers_->begin(link, sender, copy.msg, now_);
    assert(job.has_value());
    (void)job;
    nodes_[sender].buffer.set_in_flight(copy.msg->id, true);
    metrics_.on_transfer_started();
  };

  // pass 1: direct deliveries
  for (const auto& [peer, link] : node_peers_[sender]) {
    if (const Copy* copy = buf.oldest_for(peer)) {
      begin_job(link, *copy);
      return;
    }
  }
  // pass 2: relays, skipping peer pairs whose buffers are unchanged since the
  // last empty scan
  for (const auto& [peer, link] : node_peers_[sender]) {
    ScanState& scan = scan_cache_[{sender, peer}];
    const Buffer& peer_buf = nodes_[peer].buffer;
    if (scan.exhausted && scan.sender_version == buf.version() &&
        scan.peer_version == peer_buf.version())
      continue;
    const Copy* pick = nullptr;
    for (const Copy& copy : buf.copies()) {
      auto intent = policy_->offer(copy, view(sender), view(peer));
      if (intent && !intent->is_delivery) {
        pick = &copy;
        break;
      }
    }
    if (pick) {
      scan.exhausted = false;
      begin_job(link, *pick);
      return;
    }
    scan = ScanState{buf.version(), peer_buf.version(), true};
  }
}

void SimEngine::phase_transfers() {
  auto res = transfers_->step(now_, detector_->live());
  for (const auto& job : res.aborted) {
    // atomic: no partial delivery, no relayed count; only "started" remains
    Copy* held = nodes_[job.sender].buffer.find(job.msg_id);
    assert(held && held->in_flight);
    held->in_flight = false;
  }
  for (const auto& job : res.completed) handle_completion(job);
  for (NodeId n : visit_order_) try_start(n);
}

void SimEngine::phase_expiry() {
  for (NodeId n : visit_order_) record_drops(nodes_[n].buffer.expire(now_));
}

void SimEngine::phase_traffic() {
  while (next_event_ < events_.size() && events_[next_event_].time <= now_) {
    const CreationEvent& ev = events_[next_event_++];
    const auto& source = nodes_[ev.source];
    auto msg = std::make_shared<MessageInfo>();
    msg->id = ev.id;
    msg->source = ev.source;
    msg->destination = ev.destination;
    msg->size = ev.size;
    msg->created_at = ev.time;
    msg->ttl_seconds = scen_.ttl_seconds(scen_.groups[source.group]);
    metrics_.on_created(msg, ev.time);

    Copy copy;
    copy.msg = msg;
    copy.received_at = ev.time;
    copy.hop_path = {ev.source};
    if (auto* snw = dynamic_cast<const SprayAndWaitPolicy*>(policy_.get()))
      copy.copies_remaining = snw->initial_copies();
    auto res = nodes_[ev.source].buffer.insert(std::move(copy), now_);
    if (res.outcome != InsertOutcome::accepted) continue;  // larger than the whole buffer
    metrics_.on_copy_added(msg->id);
    record_drops(res.dropped);
  }
}

RunResult SimEngine::run(const std::string& out_dir) {
  if (ran_) throw EngineError("engine already ran; construct a fresh one per run");
  ran_ = true;

  if (!events_csv_path_.empty()) write_events_csv(events_, events_csv_path_);

  // warm-up: movement only, before t=0, radios and traffic off
  if (scen_.warmup > 0) {
    const long steps = static_cast<long>(std::ceil(scen_.warmup / scen_.time_step));
    double prev = -scen_.warmup;
    for (long k = 1; k <= steps; ++k) {
      const double t = std::min(-scen_.warmup + k * scen_.time_step, 0.0);
      phase_movement(t - prev);
      prev = t;
    }
  }

  const long steps =
      scen_.end_time > 0 ? static_cast<long>(std::ceil(scen_.end_time / scen_.time_step)) : 0;
  double prev = 0;
  for (long k = 1; k <= steps; ++k) {
    now_ = std::min(k * scen_.time_step, scen_.end_time);
    phase_movement(now_ - prev);
    const ContactEvents ev = detector_->step([&] {
      std::vector<Point> pos(nodes_.size());
      for (const auto& node : nodes_) pos[node.id] = node.move.position;
      return pos;
    }());
    phase_router_reactions(ev);
    phase_transfers();
    phase_expiry();
    phase_traffic();
    if (hook_) hook_(*this, now_);
    prev = now_;
  }
  now_ = scen_.end_time;
  if (contact_trace_) contact_trace_.flush();

  RunResult result;
  result.scenario_name = scen_.name;
  result.seed = scen_.seed;
  result.router = scen_.router.variant == RouterVariant::epidemic ? "epidemic" : "snw";
  if (const GroupSpec* dest = scen_.find_group(scen_.traffic.dest_group))
    result.dest_buffer = dest->buffer_size;
  result.summary = metrics_.summary();
  result.timeline = metrics_.timeseries(scen_.report_interval, scen_.end_time);
  result.hops = metrics_.hop_histogram();

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const auto path = [&](const char* name) {
      return (std::filesystem::path(out_dir) / name).string();
    };
    write_summary_csv(path("summary.csv"),
                      {SummaryRow{result.scenario_name, result.router, result.dest_buffer,
                                  result.seed, result.summary}});
    write_timeline_csv(path("timeline.csv"), result.timeline);
    write_hops_csv(path("hops.csv"), result.hops);
    result.report_files = {path("summary.csv"), path("timeline.csv"), path("hops.csv")};
  }
  return result;
}

RunResult run_scenario(const Scenario& s, const std::string& base_dir,
                       const std::string& out_dir) {
  SimEngine engine(s, base_dir);
  return engine.run(out_dir);
}

std::vector<RunResult> run_sweep(const Scenario& s, const std::string& axis,
                                 const std::vector<std::string>& values,
                                 const std::string& base_dir, const std::string& out_dir) {
  const std::vector<Scenario> expanded = expand_sweep(s, axis, values);
  std::vector<RunResult> results;
  std::vector<SummaryRow> rows;
  for (std::size_t i = 0; i < expanded.size(); ++i) {
    SimEngine engine(expanded[i], base_dir);
    RunResult r = engine.run();
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      std::string label = values[i];
      for (char& c : label)
        if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
      const auto path = [&](const std::string& name) {
        return (std::filesystem::path(out_dir) / name).string();
      };
      write_timeline_csv(path("timeline_" + label + ".csv"), r.timeline);
      write_hops_csv(path("hops_" + label + ".csv"), r.hops);
      r.report_files = {path("timeline_" + label + ".csv"), path("hops_" + label + ".csv")};
    }
    rows.push_back(SummaryRow{r.scenario_name, r.router, r.dest_buffer, r.seed, r.summary});
    results.push_back(std::move(r));
  }
  if (!out_dir.empty()) {
    const std::string merged = (std::filesystem::path(out_dir) / "summary.csv").string();
    write_summary_csv(merged, rows);
    for (auto& r : results) r.report_files.push_back(merged);
  }
  return results;
}

}  // namespace dtnsim
