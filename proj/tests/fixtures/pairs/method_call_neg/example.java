int limit = max - 1;
show(limit);
