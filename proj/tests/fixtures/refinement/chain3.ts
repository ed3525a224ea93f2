states: p0 p1 p2
initial: p0
alphabet: a b
p0 a p1
p1 b p2
