int count = items.size();
return count;
