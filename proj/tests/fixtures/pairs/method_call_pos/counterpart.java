Collections.sort(names, comparator);
show(names);
