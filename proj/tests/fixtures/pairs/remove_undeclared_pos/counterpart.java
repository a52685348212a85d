int size = items.size();
render(size);
