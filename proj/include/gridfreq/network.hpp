#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridfreq {

/// One aggregated control area: a node of the physical grid graph.
struct Area {
  int id = 0;                 ///< external identifier, unique within a network
  double inertia = 0.0;       ///< M, MW*s^2/rad
  double damping = 0.0;       ///< D, MW*s/rad
  double initial_load = 0.0;  ///< controllable-load command held before activation, MW
};

/// Tie line between two areas. The orientation is fixed but arbitrary; it only
/// sets the sign convention of the relative angle stored for the line.
struct TieLine {
  int from = 0;
  int to = 0;
  double susceptance = 0.0;  ///< B, MW/rad
};

struct PowerNetwork {
  std::vector<Area> areas;
  std::vector<TieLine> lines;

  std::size_t num_areas() const { return areas.size(); }
  std::size_t num_lines() const { return lines.size(); }

  std::optional<std::size_t> area_index(int id) const {
    for (std::size_t i = 0; i < areas.size(); ++i) {
      if (areas[i].id == id) return i;
    }
    return std::nullopt;
  }
};

/// Dynamic state of the grid: one relative angle per line, one frequency
/// deviation per area. Angles are stored per line because only differences
/// enter the dynamics.
struct NetworkState {
  Eigen::VectorXd theta_diff;  ///< rad, theta(from) - theta(to) per line
  Eigen::VectorXd omega;       ///< rad/s per area
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

inline void check_network_dims(const NetworkState& state, const PowerNetwork& net) {
  if (static_cast<std::size_t>(state.theta_diff.size()) != net.num_lines() ||
      static_cast<std::size_t>(state.omega.size()) != net.num_areas()) {
    std::ostringstream msg;
    msg << "network state dimensions (" << state.theta_diff.size() << " lines, "
        << state.omega.size() << " areas) do not match network (" << net.num_lines()
        << " lines, " << net.num_areas() << " areas)";
    throw std::invalid_argument(msg.str());
  }
}

/// Line endpoints resolved to area indices. Throws on dangling ids.
inline std::vector<std::pair<std::size_t, std::size_t>> line_endpoints(
    const PowerNetwork& net) {
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  ends.reserve(net.lines.size());
  for (const TieLine& line : net.lines) {
    auto a = net.area_index(line.from);
    auto b = net.area_index(line.to);
    if (!a || !b) {
      std::ostringstream msg;
      msg << "line (" << line.from << ", " << line.to << ") references unknown area";
      throw std::invalid_argument(msg.str());
    }
    ends.emplace_back(*a, *b);
  }
  return ends;
}

}  // namespace detail

/// Checks structural soundness: positive parameters, well-formed lines and a
/// connected physical graph. Collects every violation instead of throwing.
inline ValidationReport validate_network(const PowerNetwork& net) {
  ValidationReport report;
  auto add = [&report](const std::string& v) { report.violations.push_back(v); };

  if (net.areas.empty()) {
    add("network has no areas");
    return report;
  }
  for (std::size_t i = 0; i < net.areas.size(); ++i) {
    const Area& a = net.areas[i];
    for (std::size_t j = i + 1; j < net.areas.size(); ++j) {
      if (net.areas[j].id == a.id) {
        add("duplicate area id " + std::to_string(a.id));
      }
    }
    if (!(a.inertia > 0.0)) {
      add("area " + std::to_string(a.id) + ": nonpositive inertia");
    }
    if (!(a.damping > 0.0)) {
      add("area " + std::to_string(a.id) + ": nonpositive damping");
    }
  }

  for (std::size_t e = 0; e < net.lines.size(); ++e) {
    const TieLine& line = net.lines[e];
    std::string name = "line (" + std::to_string(line.from) + ", " +
                       std::to_string(line.to) + ")";
    if (line.from == line.to) add(name + ": self loop");
    if (!(line.susceptance > 0.0)) add(name + ": nonpositive susceptance");
    if (!net.area_index(line.from) || !net.area_index(line.to)) {
      add(name + ": references unknown area");
      continue;
    }
    for (std::size_t f = e + 1; f < net.lines.size(); ++f) {
      const TieLine& other = net.lines[f];
      bool same = (other.from == line.from && other.to == line.to) ||
                  (other.from == line.to && other.to == line.from);
      if (same) add("duplicate " + name);
    }
  }

  // Connectivity of the undirected physical graph, ignoring malformed lines.
  const std::size_t n = net.num_areas();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const TieLine& line : net.lines) {
    auto a = net.area_index(line.from);
    auto b = net.area_index(line.to);
    if (a && b && *a != *b) {
      adj[*a].push_back(*b);
      adj[*b].push_back(*a);
    }
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack = {0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n) add("physical graph is not connected");

  return report;
}

/// DC power flow on every line, MW: flow(from -> to) = B * theta_diff.
inline Eigen::VectorXd tie_line_flows(const NetworkState& state,
                                      const PowerNetwork& net) {
  detail::check_network_dims(state, net);
  Eigen::VectorXd flows(net.num_lines());
  for (std::size_t e = 0; e < net.num_lines(); ++e) {
    flows[static_cast<Eigen::Index>(e)] =
        net.lines[e].susceptance * state.theta_diff[static_cast<Eigen::Index>(e)];
  }
  return flows;
}

/// Net tie-line power received by each area, MW: incoming minus outgoing flow.
/// Every line contributes its flow once with each sign, so the vector sums to
/// zero for any state.
inline Eigen::VectorXd net_flow_into_areas(const NetworkState& state,
                                           const PowerNetwork& net) {
  detail::check_network_dims(state, net);
  const auto ends = detail::line_endpoints(net);
  Eigen::VectorXd net_flow = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(net.num_areas()));
  for (std::size_t e = 0; e < net.num_lines(); ++e) {
    const double flow =
        net.lines[e].susceptance * state.theta_diff[static_cast<Eigen::Index>(e)];
    net_flow[static_cast<Eigen::Index>(ends[e].second)] += flow;
    net_flow[static_cast<Eigen::Index>(ends[e].first)] -= flow;
  }
  return net_flow;
}

struct SwingDerivatives {
  Eigen::VectorXd theta_diff_rate;  ///< rad/s per line
  Eigen::VectorXd omega_rate;       ///< rad/s^2 per area
};

/// Linearized swing dynamics with DC tie-line flows:
///   d theta_diff / dt = omega(from) - omega(to)
///   M * d omega / dt  = injection - load - D * omega + net tie-line inflow
inline SwingDerivatives swing_derivatives(const NetworkState& state,
                                          const Eigen::VectorXd& net_injection,
                                          const Eigen::VectorXd& load_command,
                                          const PowerNetwork& net) {
  detail::check_network_dims(state, net);
  const auto n = static_cast<Eigen::Index>(net.num_areas());
  if (net_injection.size() != n || load_command.size() != n) {
    throw std::invalid_argument("injection/command size does not match area count");
  }
  const auto ends = detail::line_endpoints(net);

  SwingDerivatives d;
  d.theta_diff_rate.resize(static_cast<Eigen::Index>(net.num_lines()));
  d.omega_rate = net_flow_into_areas(state, net);
  for (std::size_t e = 0; e < net.num_lines(); ++e) {
    d.theta_diff_rate[static_cast<Eigen::Index>(e)] =
        state.omega[static_cast<Eigen::Index>(ends[e].first)] -
        state.omega[static_cast<Eigen::Index>(ends[e].second)];
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const Area& area = net.areas[static_cast<std::size_t>(j)];
    d.omega_rate[j] += net_injection[j] - load_command[j] - area.damping * state.omega[j];
    d.omega_rate[j] /= area.inertia;
  }
  return d;
}

}  // namespace gridfreq
