"""Charging physics walkthrough: received power vs distance, the saturating
utility curve, and how deadlines clip a stop's useful energy."""

from chargesched import ChargerSpec, SensorNode, StopRecord, effective_energy, power_at_distance, utility

spec = ChargerSpec(alpha=100.0, beta=10.0, range_d=6.0, speed_v=1.0)

print("Received power falls off with the square of (distance + offset),")
print("and cuts to zero past the charging range:\n")
for d in (0.0, 1.0, 3.0, 5.0, 6.0, 6.5):
    print(f"  d = {d:4.1f} m  ->  {power_at_distance(d, spec):6.4f} W")

print("\nUtility is linear in received energy and saturates at the demand:")
for q in (0.0, 25.0, 50.0, 100.0, 140.0):
    print(f"  {q:5.1f} J of a 100 J demand  ->  utility {utility(q, 100.0):.2f}")

node = SensorNode(0, position=(3.0, 4.0), demand=60.0, deadline=120.0)
print(f"\nA node demanding {node.demand:.0f} J with a {node.deadline:.0f} s deadline,")
print("charged at 1 W from its own position (d = 0):\n")
for arrival, dwell in ((0.0, 40.0), (100.0, 40.0), (130.0, 40.0)):
    stop = StopRecord(node.position, arrival=arrival, dwell=dwell)
    q = effective_energy([stop], node, spec)
    print(f"  arrive {arrival:5.1f} s, dwell {dwell:.0f} s  ->  {q:5.1f} J banked before the deadline")

print("\nOnly time strictly before the deadline counts; the 130 s arrival earns nothing.")
